#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ekr {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  CapExceeded,
  NotComputed,
  Internal,
};

/// Base exception for the library. The C API maps `code()` onto `ekr_status`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

/// Raised when an enumeration would exceed its configured cap.
/// `partial_count` is the number of items produced before giving up.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t partial_count)
      : Error(ErrorCode::CapExceeded, what), partial_count_(partial_count) {}
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

}  // namespace ekr
