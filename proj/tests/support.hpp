#pragma once

// Random fixtures shared by the test binaries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "monogamy/probability.hpp"
#include "monogamy/quantum.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline std::vector<double> random_simplex(Rng& rng, std::size_t n, double zero_chance = 0.0) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    x = unit(rng) < zero_chance ? 0.0 : expo(rng);
    total += x;
  }
  if (total == 0.0) {
    v[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : v) x /= total;
  return v;
}

inline monogamy::DistTable random_table(Rng& rng, monogamy::Scope scope, double zero_chance = 0.0) {
  const std::size_t n = monogamy::scope_volume(scope);
  return monogamy::DistTable(std::move(scope), random_simplex(rng, n, zero_chance));
}

inline monogamy::quantum::CMatrix random_complex(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  monogamy::quantum::CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = {normal(rng), normal(rng)};
  }
  return m;
}

/// G G^dagger / tr with Gaussian G (Ginibre ensemble); rank `rank` if given.
inline monogamy::quantum::DensityOp random_density(Rng& rng, std::vector<std::size_t> dims, std::size_t rank = 0) {
  std::size_t d = 1;
  for (std::size_t x : dims) d *= x;
  const auto g = random_complex(rng, d, rank == 0 ? d : rank);
  monogamy::quantum::CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return monogamy::quantum::DensityOp(std::move(dims), m);
}

inline monogamy::quantum::CMatrix random_unitary(Rng& rng, std::size_t d) {
  Eigen::HouseholderQR<monogamy::quantum::CMatrix> qr(random_complex(rng, d, d));
  return qr.householderQ();
}

/// Random projective qubit measurement.
inline monogamy::quantum::Povm random_qubit_povm(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double theta = std::acos(2.0 * unit(rng) - 1.0);
  const double phi = 2.0 * 3.141592653589793 * unit(rng);
  return monogamy::quantum::Povm::qubit_axis(theta, phi);
}

}  // namespace testing
