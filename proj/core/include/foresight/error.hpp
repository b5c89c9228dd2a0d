#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace foresight {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments or option combinations (CLI exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Input data that violates a domain constraint (CLI exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Validation failure attributable to one named input field.
class FieldError : public ValidationError {
 public:
  FieldError(std::string field, const std::string& what)
      : ValidationError(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed input file. Carries the 1-based line where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A pipeline stage was asked to run before its input artifact exists.
class MissingArtifactError : public Error {
 public:
  MissingArtifactError(std::string artifact, std::string stage)
      : Error("missing artifact '" + artifact + "': run `foresight " + stage + "` first"),
        artifact_(std::move(artifact)),
        stage_(std::move(stage)) {}

  const std::string& artifact() const noexcept { return artifact_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string artifact_;
  std::string stage_;
};

/// Lookup of a named entity (scenario, factor) that does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace foresight
