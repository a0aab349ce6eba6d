#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace varest {

enum class ErrorKind
{
  // diffseq
  TooShort,
  SumNotZero,
  NormNotOne,
  DegenerateEndpoint,
  UnknownKind,
  NonPositiveOrder,
  ConvergenceFailure,
  // smoother
  InsufficientSupport,
  RankDeficient,
  // estimator
  TooFewObservations,
  InvalidSample,
  // bandwidth
  BadParameter,
  AllCandidatesFailed,
  // simlab
  BadScenario,
  ExcessiveFailures,
  // io
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

//! Exception carrying a machine-readable error kind.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what)
    , kind_(kind)
    , detail_(what)
  {}

  ErrorKind kind() const noexcept { return kind_; }
  //! Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorKind kind_;
  std::string detail_;
};

} // namespace varest
