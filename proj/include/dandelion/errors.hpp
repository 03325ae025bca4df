#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dandelion {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data (bad CSV row, bad JSON shape, wrong arity...).
struct ParseError : Error {
  ParseError(std::size_t record_, const std::string& reason)
      : Error("record " + std::to_string(record_) + ": " + reason), record(record_) {}
  std::size_t record;  // 1-based data record number (header excluded)
};

struct InvalidParams : Error {
  using Error::Error;
};

struct EmptyTrack : Error {
  EmptyTrack() : Error("track has no samples") {}
  using Error::Error;
};

struct NonFinite : Error {
  using Error::Error;
};

// Label color coding requested but the sample carries no label.
struct MissingLabel : Error {
  using Error::Error;
};

struct ImageTooLarge : Error {
  using Error::Error;
};

// Rejection sampling for a layout exceeded its attempt budget.
struct LayoutFailure : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace dandelion
