#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mskg {

enum class ErrorCode {
  UnknownPrefix,
  InvalidNode,
  InvalidLiteral,
  EmptyIdentity,
  MalformedUai,
  EmptyQuery,
  NetworkUnavailable,
  MalformedResponse,
  MissingHeader,
  DuplicateColumn,
  EmptyInput,
  UnparseableMixture,
  UnmappedColumn,
  UnknownLayout,
  MissingMandatoryColumn,
  InvalidSpec,
  IOFailure,
  ParseError,
  QueryFailure,
  EndpointUnreachable,
  LoadMismatch,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// MalformedUai carries the byte offset of the first violation.
class UaiError : public Error {
 public:
  UaiError(std::size_t position, const std::string& what)
      : Error(ErrorCode::MalformedUai, what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mskg
