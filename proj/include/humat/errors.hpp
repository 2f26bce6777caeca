#pragma once

#include <stdexcept>
#include <string>

namespace humat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All motive importances of an agent are zero; evaluation is undefined.
class ZeroImportance : public Error {
 public:
  using Error::Error;
};

/// The scenario defines no Social-group motive.
class NoSocialMotive : public Error {
 public:
  using Error::Error;
};

class UnknownAgent : public Error {
 public:
  using Error::Error;
};

class NotNeighbor : public Error {
 public:
  using Error::Error;
};

class NoNeighbors : public Error {
 public:
  using Error::Error;
};

/// Bad network generator parameters.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Errors that carry the offending location as a dotted/indexed field path,
/// e.g. `agents[3].motive_states[0].satisfaction[1]`.
class FieldError : public Error {
 public:
  FieldError(std::string field_path, const std::string& what)
      : Error(field_path.empty() ? what : field_path + ": " + what),
        field_path_(std::move(field_path)) {}

  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::string field_path_;
};

class InvalidConfig : public FieldError {
 public:
  using FieldError::FieldError;
};

class ValidationFailure : public FieldError {
 public:
  using FieldError::FieldError;
};

/// Unparseable document or unsupported schema_version.
class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace humat
