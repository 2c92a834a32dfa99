#include <doctest.h>

#include <string>
#include <vector>

#include "ssm/error.hpp"
#include "ssm/io.hpp"
#include "test_util.hpp"

using test_util::path_for;
using test_util::read_file;
using test_util::write_file;

TEST_CASE("feature matrix loads csv rows in order") {
  const auto path = write_file("fm_basic.csv", "1.0,2.0\n3.0,4.0\n");
  const auto m = ssm::load_feature_matrix(path);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 0) == 3.0);
  CHECK(m(1, 1) == 4.0);
}

TEST_CASE("feature matrix handles a single 1x1 row") {
  const auto path = write_file("fm_single.csv", "0.5");
  const auto m = ssm::load_feature_matrix(path);
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  CHECK(m(0, 0) == 0.5);
}

TEST_CASE("ragged rows report the offending line") {
  const auto path = write_file("fm_ragged.csv", "1.0,2.0\n3.0\n");
  try {
    ssm::load_feature_matrix(path);
    FAIL("expected ParseError");
  } catch (const ssm::ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("non-numeric and non-finite fields are rejected") {
  CHECK_THROWS_AS(ssm::load_feature_matrix(write_file("fm_text.csv", "1.0,abc\n")),
                  ssm::ParseError);
  CHECK_THROWS_AS(ssm::load_feature_matrix(write_file("fm_nan.csv", "nan,1.0\n")),
                  ssm::ParseError);
  CHECK_THROWS_AS(ssm::load_feature_matrix(write_file("fm_inf.csv", "inf,1.0\n")),
                  ssm::ParseError);
  CHECK_THROWS_AS(ssm::load_feature_matrix(write_file("fm_trail.csv", "1.5x,2.0\n")),
                  ssm::ParseError);
}

TEST_CASE("empty and unreadable feature files raise the right errors") {
  CHECK_THROWS_AS(ssm::load_feature_matrix(write_file("fm_empty.csv", "")), ssm::EmptyInput);
  CHECK_THROWS_AS(ssm::load_feature_matrix(write_file("fm_blank.csv", "\n\n")),
                  ssm::EmptyInput);
  CHECK_THROWS_AS(ssm::load_feature_matrix(path_for("no_such_file.csv")), ssm::IoError);
}

TEST_CASE("tsv delimiter and CRLF line endings both parse") {
  const auto tsv = write_file("fm_tab.tsv", "1.0\t2.0\r\n3.0\t4.0\r\n");
  const auto m = ssm::load_feature_matrix(tsv, ssm::Delimiter::Tsv);
  REQUIRE(m.rows() == 2);
  CHECK(m(1, 1) == 4.0);
}

TEST_CASE("feature matrix round-trips through csv exactly") {
  auto m = test_util::random_matrix(7, 5, 11);
  m(0, 0) = 0.1;
  m(1, 1) = 1.0 / 3.0;
  m(2, 2) = 1e-300;
  m(3, 3) = -12345.678901234567;
  const auto path = path_for("fm_roundtrip.csv");
  ssm::write_feature_matrix(path, m);
  const auto back = ssm::load_feature_matrix(path);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  CHECK(back == m);
}

TEST_CASE("format_real keeps every bit of a double") {
  for (const double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 3.141592653589793}) {
    CHECK(std::stod(ssm::format_real(v)) == v);
  }
}

TEST_CASE("labels load one token per line") {
  const auto labels = ssm::load_labels(write_file("labels.txt", "cat\ndog\ncat\n"));
  REQUIRE(labels.size() == 3);
  CHECK(labels[0] == "cat");
  CHECK(labels[1] == "dog");
  CHECK(labels[2] == "cat");
  CHECK(ssm::load_labels(write_file("labels1.txt", "bird")) ==
        std::vector<std::string>{"bird"});
  CHECK_THROWS_AS(ssm::load_labels(write_file("labels_empty.txt", "")), ssm::EmptyInput);
}

TEST_CASE("pairs parse, skip comments, and round-trip") {
  const auto path = write_file("pairs.csv", "# header comment\n0,1\n\n2,3\n");
  const auto pairs = ssm::load_pairs(path);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == ssm::IndexPair{0, 1});
  CHECK(pairs[1] == ssm::IndexPair{2, 3});
  const auto out = path_for("pairs_out.csv");
  ssm::write_pairs(out, pairs);
  CHECK(ssm::load_pairs(out) == pairs);
}

TEST_CASE("malformed pair lines are parse errors") {
  CHECK_THROWS_AS(ssm::load_pairs(write_file("pairs_bad.csv", "0\n")), ssm::ParseError);
  CHECK_THROWS_AS(ssm::load_pairs(write_file("pairs_bad2.csv", "0,x\n")), ssm::ParseError);
  CHECK_THROWS_AS(ssm::load_pairs(write_file("pairs_none.csv", "# nothing\n")),
                  ssm::EmptyInput);
}
