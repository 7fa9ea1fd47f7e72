#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace layoutforge {

enum class ErrorKind {
  InvalidEncoding,
  EmptyCorpus,
  NoInvolvement,
  TooFewLetters,
  AlreadyAssigned,
  CapacityExceeded,
  MalformedLayout,
  InvariantViolation,
  InvalidArgument,
  EmptyInput,
  Config,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidEncoding: return "InvalidEncoding";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::NoInvolvement: return "NoInvolvement";
    case ErrorKind::TooFewLetters: return "TooFewLetters";
    case ErrorKind::AlreadyAssigned: return "AlreadyAssigned";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::MalformedLayout: return "MalformedLayout";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. `position` is a byte offset for
/// encoding and parse errors when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), kind_(kind), position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace layoutforge
