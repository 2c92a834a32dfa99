#pragma once

#include <stdexcept>
#include <string>

namespace ssm {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A file could not be opened or read.
struct IoError : Error {
  using Error::Error;
};

// Malformed input file; carries the 1-based line number when known.
struct ParseError : Error {
  ParseError(const std::string& what, long line_number = 0)
      : Error(line_number > 0 ? what + " (line " + std::to_string(line_number) + ")" : what),
        line(line_number) {}
  long line = 0;
};

// An input that must be nonempty was empty.
struct EmptyInput : Error {
  using Error::Error;
};

// A caller-supplied argument violates a precondition.
struct InvalidArgument : Error {
  using Error::Error;
};

// Two vectors or matrices that must agree in shape do not.
struct DimensionMismatch : Error {
  using Error::Error;
};

// A Hamming-space value outside {0,1}.
struct NonBinaryInput : Error {
  using Error::Error;
};

// Input is degenerate for the requested computation (zero matrix,
// zero-variance sample, ...).
struct DegenerateInput : Error {
  using Error::Error;
};

// No sentence contained any in-vocabulary token.
struct EmptyVocabulary : Error {
  using Error::Error;
};

// Cosine distance against a zero vector.
struct ZeroVector : Error {
  using Error::Error;
};

// A combinatorial guard was exceeded.
struct TooLarge : Error {
  using Error::Error;
};

}  // namespace ssm
