#pragma once

#include <stdexcept>
#include <string>

namespace ctscan {

// Error categories map onto the CLI exit codes: UsageError -> 1,
// NetworkError -> 2, DataError (and subclasses) -> 3. Anything that goes
// wrong while talking to a log (transport, HTTP status, malformed or empty
// response bodies) is a NetworkError; anything wrong with local bytes or
// artifacts (DER, leaves, CSV/JSONL files) is a DataError.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : Error {
  using Error::Error;
};

struct NetworkError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

// Malformed input bytes: DER structures, Merkle leaves, base64.
struct ParseError : DataError {
  using DataError::DataError;
};

}  // namespace ctscan
