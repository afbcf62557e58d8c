#pragma once

#include <stdexcept>
#include <string>

namespace pmgv {

// Exit codes shared between the library error types and the CLI.
enum class ExitCode : int {
  Ok = 0,
  Failure = 1,
  ConfigError = 2,
  ProtocolViolation = 3,
  NetworkFailure = 4,
};

// Invalid or inconsistent configuration; carries the config field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A party violated the protocol contract (bad sequencing, cross-group
// verification, malformed frames).
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed wire frame; names the offending field.
class WireError : public ProtocolViolation {
 public:
  WireError(std::string field, const std::string& message)
      : ProtocolViolation(message + " (field '" + field + "')"),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Transport-level failure (connect, accept, peer loss).
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmgv
