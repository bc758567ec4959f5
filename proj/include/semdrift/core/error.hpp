#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace semdrift {

// Base for all errors raised by the library. The CLI maps each subclass to
// an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record or argument violates a type invariant. `field` names the
// offending field when there is one (e.g. "facts[2].sentence_index").
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string field = {})
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)), message_(what) {}

  const std::string& field() const { return field_; }
  // Description without the field prefix.
  const std::string& message() const { return message_; }

 private:
  std::string field_;
  std::string message_;
};

// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

// Inconsistent or incomplete configuration (missing cost entry, k > k_max).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Failure talking to a generator, scorer or QA endpoint.
class RemoteError : public Error {
 public:
  RemoteError(const std::string& what, bool retriable)
      : Error(what), retriable_(retriable) {}

  bool retriable() const { return retriable_; }

 private:
  bool retriable_;
};

// The endpoint answered, but the payload does not match the wire schema.
class ProtocolError : public RemoteError {
 public:
  explicit ProtocolError(const std::string& what) : RemoteError(what, false) {}
};

// The endpoint cannot provide something the request needs (e.g. logprobs).
class CapabilityError : public RemoteError {
 public:
  explicit CapabilityError(const std::string& what) : RemoteError(what, false) {}
};

}  // namespace semdrift
