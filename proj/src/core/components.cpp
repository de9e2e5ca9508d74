#include "saism/core/components.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace saism {

void ComponentSet::step(std::size_t i, std::span<double> x, double step) const {
  std::vector<double> g(x.size());
  subgradient(i, x, g);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] -= step * g[j];
}

FunctionComponents::FunctionComponents(std::size_t dimension,
                                       std::vector<ConvexComponent> components)
    : dimension_(dimension), components_(std::move(components)) {
  for (const auto& c : components_)
    if (!c.value || !c.subgradient)
      throw std::invalid_argument("component without value or subgradient");
}

double FunctionComponents::value(std::size_t i, std::span<const double> x) const {
  return components_.at(i).value(x);
}

void FunctionComponents::subgradient(std::size_t i, std::span<const double> x,
                                     std::span<double> g) const {
  const std::vector<double> v = components_.at(i).subgradient(x);
  if (v.size() != g.size())
    throw std::invalid_argument("component " + std::to_string(i) +
                                " returned a subgradient of size " +
                                std::to_string(v.size()));
  std::copy(v.begin(), v.end(), g.begin());
}

ConvexComponent absolute_affine(std::vector<double> a, double b) {
  ConvexComponent c;
  c.value = [a, b](std::span<const double> x) {
    double r = -b;
    for (std::size_t j = 0; j < a.size(); ++j) r += a[j] * x[j];
    return std::abs(r);
  };
  c.subgradient = [a, b](std::span<const double> x) {
    double r = -b;
    for (std::size_t j = 0; j < a.size(); ++j) r += a[j] * x[j];
    std::vector<double> g(a.size(), 0.0);
    if (r > 0.0) {
      g = a;
    } else if (r < 0.0) {
      for (std::size_t j = 0; j < a.size(); ++j) g[j] = -a[j];
    }
    return g;
  };
  return c;
}

}  // namespace saism
