#pragma once

#include <string_view>

namespace varest {

enum class KernelKind
{
  epanechnikov,
  uniform,
  triangular,
  biweight
};

KernelKind parse_kernel(std::string_view name);
std::string_view to_string(KernelKind kind);

struct KernelMoments
{
  double sigma2;    // int u^2 K(u) du
  double roughness; // int K(u)^2 du
};

//! Compactly supported symmetric density on [-1, 1].
class KernelSpec
{
public:
  constexpr KernelSpec(KernelKind kind = KernelKind::epanechnikov)
    : kind_(kind)
  {}

  KernelKind kind() const { return kind_; }

  double operator()(double u) const;
  KernelMoments moments() const;

  bool operator==(const KernelSpec&) const = default;

private:
  KernelKind kind_;
};

inline double kernel_eval(const KernelSpec& kernel, double u)
{
  return kernel(u);
}

inline KernelMoments kernel_moments(const KernelSpec& kernel)
{
  return kernel.moments();
}

} // namespace varest
