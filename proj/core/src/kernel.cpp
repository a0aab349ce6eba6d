#include "varest/kernel.hpp"

#include "varest/error.hpp"

#include <cmath>
#include <string>

namespace varest {

KernelKind parse_kernel(std::string_view name)
{
  if (name == "epanechnikov")
    return KernelKind::epanechnikov;
  if (name == "uniform")
    return KernelKind::uniform;
  if (name == "triangular")
    return KernelKind::triangular;
  if (name == "biweight")
    return KernelKind::biweight;
  throw Error(ErrorKind::UnknownKind, "unknown kernel '" + std::string(name) + "'");
}

std::string_view to_string(KernelKind kind)
{
  switch (kind) {
    case KernelKind::epanechnikov: return "epanechnikov";
    case KernelKind::uniform: return "uniform";
    case KernelKind::triangular: return "triangular";
    case KernelKind::biweight: return "biweight";
  }
  return "unknown";
}

double KernelSpec::operator()(double u) const
{
  const double a = std::abs(u);
  if (!(a <= 1.0))
    return 0.0;
  switch (kind_) {
    case KernelKind::epanechnikov:
      return 0.75 * (1.0 - u * u);
    case KernelKind::uniform:
      return 0.5;
    case KernelKind::triangular:
      return 1.0 - a;
    case KernelKind::biweight: {
      const double t = 1.0 - u * u;
      return 0.9375 * t * t;
    }
  }
  return 0.0;
}

KernelMoments KernelSpec::moments() const
{
  switch (kind_) {
    case KernelKind::epanechnikov:
      return { 1.0 / 5.0, 3.0 / 5.0 };
    case KernelKind::uniform:
      return { 1.0 / 3.0, 1.0 / 2.0 };
    case KernelKind::triangular:
      return { 1.0 / 6.0, 2.0 / 3.0 };
    case KernelKind::biweight:
      return { 1.0 / 7.0, 5.0 / 7.0 };
  }
  return { 0.0, 0.0 };
}

} // namespace varest
