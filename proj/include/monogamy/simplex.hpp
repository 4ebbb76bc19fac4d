#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace monogamy::lp {

/// Column source for `A w = b, w >= 0`. Columns are produced on demand so the
/// constraint matrix never has to be materialized (the marginal LP has one
/// column per deterministic assignment).
class ColumnSource {
 public:
  virtual ~ColumnSource() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t columns() const = 0;
  /// Dense copy of column j into `out` (length rows()).
  virtual void column(std::size_t j, std::span<double> out) const = 0;
  /// y^T A_j.
  virtual double dot(std::size_t j, std::span<const double> y) const = 0;
};

/// Explicit dense matrix; handy for small problems and tests.
class DenseColumns final : public ColumnSource {
 public:
  explicit DenseColumns(Eigen::MatrixXd a) : a_(std::move(a)) {}
  std::size_t rows() const override { return static_cast<std::size_t>(a_.rows()); }
  std::size_t columns() const override { return static_cast<std::size_t>(a_.cols()); }
  void column(std::size_t j, std::span<double> out) const override;
  double dot(std::size_t j, std::span<const double> y) const override;

 private:
  Eigen::MatrixXd a_;
};

struct Options {
  double feasibility_tolerance = 1e-8;  // on the phase-one objective (sum of artificials)
  double pivot_tolerance = 1e-11;
  double reduced_cost_tolerance = 1e-11;
  std::size_t refactor_interval = 64;
  std::size_t max_iterations = 200000;
};

struct PhaseOneResult {
  bool feasible = false;
  /// Optimal phase-one objective: L1 distance from b to the cone A w, w >= 0.
  double infeasibility = 0.0;
  /// Nonzero structural variables at the optimum, sorted by column index.
  std::vector<std::pair<std::size_t, double>> support;
  /// Optimal phase-one duals. When infeasible they form a Farkas certificate:
  /// y^T A_j <= 0 for every column while y^T b = infeasibility > 0.
  std::vector<double> dual;
  std::size_t iterations = 0;
};

/// Phase-one revised simplex with Bland's rule (lowest eligible index enters,
/// ratio ties leave by lowest basic index). Deterministic for fixed input.
PhaseOneResult phase_one(const ColumnSource& a, std::span<const double> b, const Options& options = {});

}  // namespace monogamy::lp
