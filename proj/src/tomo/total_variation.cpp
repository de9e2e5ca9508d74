#include "saism/tomo/total_variation.hpp"

#include <cmath>
#include <stdexcept>

namespace saism::tomo {

namespace {

std::vector<double> parcel_norms(const Image& x) {
  const std::size_t rows = x.rows(), cols = x.cols();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = x(i, j);
      const double up = i > 0 ? x(i - 1, j) : 0.0;
      const double left = j > 0 ? x(i, j - 1) : 0.0;
      out[i * cols + j] = std::hypot(v - up, v - left);
    }
  }
  return out;
}

}  // namespace

double total_variation(const Image& x) {
  double s = 0.0;
  for (double v : parcel_norms(x)) s += v;
  return s;
}

std::vector<double> total_variation_subgradient(const Image& x) {
  const std::size_t rows = x.rows(), cols = x.cols();
  const std::vector<double> d = parcel_norms(x);
  std::vector<double> g(x.size(), 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = x(i, j);
      const std::size_t q = i * cols + j;
      double t = 0.0;
      if (d[q] != 0.0) {
        const double up = i > 0 ? x(i - 1, j) : 0.0;
        const double left = j > 0 ? x(i, j - 1) : 0.0;
        t += (2.0 * v - left - up) / d[q];
      }
      if (j + 1 < cols && d[q + 1] != 0.0) t += (v - x(i, j + 1)) / d[q + 1];
      if (i + 1 < rows && d[q + cols] != 0.0) t += (v - x(i + 1, j)) / d[q + cols];
      g[q] = t;
    }
  }
  return g;
}

ConstraintFunction total_variation_constraint(std::size_t rows, std::size_t cols,
                                              double tau, double relaxation) {
  if (!(tau >= 0.0)) throw std::invalid_argument("TV budget must be nonnegative");
  ConstraintFunction h;
  h.name = "total_variation";
  h.relaxation = relaxation;
  h.value = [rows, cols, tau](std::span<const double> x) {
    return total_variation(Image(rows, cols, std::vector<double>(x.begin(), x.end()))) - tau;
  };
  h.subgradient = [rows, cols](std::span<const double> x) {
    return total_variation_subgradient(
        Image(rows, cols, std::vector<double>(x.begin(), x.end())));
  };
  return h;
}

}  // namespace saism::tomo
