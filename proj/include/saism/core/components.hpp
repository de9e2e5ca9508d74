#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace saism {

/// A collection of convex summands f_0..f_{m-1} : R^n -> R.
///
/// Implementations must be safe to call concurrently from several threads;
/// all methods are const and may not touch shared mutable state.
class ComponentSet {
 public:
  virtual ~ComponentSet() = default;

  virtual std::size_t size() const = 0;
  virtual std::size_t dimension() const = 0;

  virtual double value(std::size_t i, std::span<const double> x) const = 0;

  /// Overwrites g with some element of the subdifferential of f_i at x.
  virtual void subgradient(std::size_t i, std::span<const double> x,
                           std::span<double> g) const = 0;

  /// In-place incremental step x <- x - step * g with g taken at the incoming x.
  /// The default goes through a dense subgradient; sparse families override it.
  virtual void step(std::size_t i, std::span<double> x, double step) const;
};

/// One convex summand described by closures.
struct ConvexComponent {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> subgradient;
};

/// Component set backed by a list of closures. Useful for small problems.
class FunctionComponents final : public ComponentSet {
 public:
  FunctionComponents(std::size_t dimension, std::vector<ConvexComponent> components);

  std::size_t size() const override { return components_.size(); }
  std::size_t dimension() const override { return dimension_; }
  double value(std::size_t i, std::span<const double> x) const override;
  void subgradient(std::size_t i, std::span<const double> x,
                   std::span<double> g) const override;

 private:
  std::size_t dimension_;
  std::vector<ConvexComponent> components_;
};

/// |<a, x> - b| with the sign subgradient (zero at the kink).
ConvexComponent absolute_affine(std::vector<double> a, double b);

}  // namespace saism
