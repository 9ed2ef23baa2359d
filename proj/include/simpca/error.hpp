#pragma once

#include <stdexcept>
#include <string>

namespace simpca {

/// Broad failure class; the CLI maps it to an exit code.
enum class ErrorKind { Config, Data, Numerical };

enum class ErrorCode {
  // data
  NonFiniteInput,
  ZeroVarianceColumn,
  MissingColumn,
  NonNumericCell,
  MissingValue,
  FileNotFound,
  // numerical
  RankExceeded,
  ZeroComponent,
  ZeroColumn,
  ZeroRow,
  ZeroTarget,
  EmptySupport,
  ExhaustedSchedule,
  InitialFitUnderdetermined,
  SingularSubset,
  InfeasibleOrthogonality,
  // config
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, ErrorCode code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(code) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  ErrorCode code_;
};

class DataError : public Error {
 public:
  DataError(ErrorCode code, const std::string& what)
      : Error(ErrorKind::Data, code, what) {}
};

class NumericalError : public Error {
 public:
  NumericalError(ErrorCode code, const std::string& what)
      : Error(ErrorKind::Numerical, code, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::Config, ErrorCode::InvalidArgument, what) {}
};

}  // namespace simpca
