#pragma once

#include <stdexcept>
#include <string>

namespace pumatune {

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The mass matrix could not be factored; the configuration is numerically singular.
class SingularConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration or parameter file is malformed. The message names the file and field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::string field, const std::string& detail)
      : std::runtime_error(file + ": " + field + ": " + detail),
        file_(std::move(file)),
        field_(std::move(field)) {}

  const std::string& file() const { return file_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::string field_;
};

}  // namespace pumatune
