#include "monogamy/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monogamy/error.hpp"

namespace monogamy::lp {

void DenseColumns::column(std::size_t j, std::span<double> out) const {
  for (Eigen::Index i = 0; i < a_.rows(); ++i) out[static_cast<std::size_t>(i)] = a_(i, static_cast<Eigen::Index>(j));
}

double DenseColumns::dot(std::size_t j, std::span<const double> y) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a_.rows(); ++i) s += y[static_cast<std::size_t>(i)] * a_(i, static_cast<Eigen::Index>(j));
  return s;
}

namespace {

class PhaseOne {
 public:
  PhaseOne(const ColumnSource& a, std::span<const double> b, const Options& options)
      : a_(a), options_(options), m_(a.rows()), n_(a.columns()) {
    if (b.size() != m_) fail(ErrorCode::DimensionMismatch, "rhs length differs from row count");
    sign_.assign(m_, 1.0);
    rhs_ = Eigen::VectorXd(static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      if (!std::isfinite(b[i])) fail(ErrorCode::InvalidArgument, "non-finite rhs");
      if (b[i] < 0.0) sign_[i] = -1.0;
      rhs_(idx(i)) = sign_[i] * b[i];
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
    is_basic_.assign(n_, false);
    binv_ = Eigen::MatrixXd::Identity(idx(m_), idx(m_));
    xb_ = rhs_;
    scratch_.resize(m_);
  }

  PhaseOneResult run() {
    PhaseOneResult result;
    std::vector<double> y(m_), y_orig(m_);
    Eigen::VectorXd alpha(idx(m_));
    std::size_t since_refactor = 0;

    for (;;) {
      if (result.iterations >= options_.max_iterations) {
        fail(ErrorCode::NumericalFailure, "phase-one simplex exceeded its iteration budget");
      }
      compute_duals(y, y_orig);

      // Bland: lowest-index column with negative reduced cost enters.
      std::size_t entering = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        const double reduced = -a_.dot(j, y_orig);
        if (reduced < -options_.reduced_cost_tolerance) {
          entering = j;
          break;
        }
      }
      if (entering == n_) break;

      a_.column(entering, scratch_);
      for (std::size_t i = 0; i < m_; ++i) scratch_[i] *= sign_[i];
      alpha.noalias() = binv_ * Eigen::Map<const Eigen::VectorXd>(scratch_.data(), idx(m_));

      // Ratio test; ties go to the lowest basic variable index.
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a_i = alpha(idx(i));
        if (a_i > options_.pivot_tolerance) best_ratio = std::min(best_ratio, std::max(0.0, xb_(idx(i))) / a_i);
      }
      if (!std::isfinite(best_ratio)) fail(ErrorCode::NumericalFailure, "phase-one simplex found an unbounded ray");
      const double slack = 1e-12 * (1.0 + best_ratio);
      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a_i = alpha(idx(i));
        if (a_i <= options_.pivot_tolerance) continue;
        if (std::max(0.0, xb_(idx(i))) / a_i > best_ratio + slack) continue;
        if (leave == m_ || basis_[i] < basis_[leave]) leave = i;
      }

      pivot(leave, entering, alpha);
      ++result.iterations;
      if (++since_refactor >= options_.refactor_interval) {
        refactor();
        since_refactor = 0;
      }
    }

    refactor();
    compute_duals(y, y_orig);

    double objective = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) objective += std::max(0.0, xb_(idx(i)));
    }
    result.infeasibility = objective;
    result.feasible = objective <= options_.feasibility_tolerance;
    result.dual = y_orig;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ && xb_(idx(i)) > 0.0) result.support.emplace_back(basis_[i], xb_(idx(i)));
    }
    std::sort(result.support.begin(), result.support.end());
    return result;
  }

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  void compute_duals(std::vector<double>& y, std::vector<double>& y_orig) const {
    // y^T = c_B^T B^{-1}; only artificial basics carry unit cost.
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t c = 0; c < m_; ++c) y[c] += binv_(idx(r), idx(c));
    }
    for (std::size_t i = 0; i < m_; ++i) y_orig[i] = sign_[i] * y[i];
  }

  void pivot(std::size_t r, std::size_t entering, const Eigen::VectorXd& alpha) {
    const double pivot = alpha(idx(r));
    const double theta = std::max(0.0, xb_(idx(r))) / pivot;
    xb_ -= theta * alpha;
    xb_(idx(r)) = theta;
    binv_.row(idx(r)) /= pivot;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || alpha(idx(i)) == 0.0) continue;
      binv_.row(idx(i)) -= alpha(idx(i)) * binv_.row(idx(r));
    }
    if (basis_[r] < n_) is_basic_[basis_[r]] = false;
    basis_[r] = entering;
    is_basic_[entering] = true;
  }

  void refactor() {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(idx(m_), idx(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) {
        basis_matrix(idx(basis_[i] - n_), idx(i)) = 1.0;
        continue;
      }
      a_.column(basis_[i], scratch_);
      for (std::size_t r = 0; r < m_; ++r) basis_matrix(idx(r), idx(i)) = sign_[r] * scratch_[r];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    binv_ = lu.inverse();
    xb_ = binv_ * rhs_;
    for (Eigen::Index i = 0; i < xb_.size(); ++i) {
      if (xb_(i) < 0.0 && xb_(i) > -1e-11) xb_(i) = 0.0;
    }
  }

  const ColumnSource& a_;
  Options options_;
  std::size_t m_;
  std::size_t n_;
  std::vector<double> sign_;
  Eigen::VectorXd rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  std::vector<double> scratch_;
};

}  // namespace

PhaseOneResult phase_one(const ColumnSource& a, std::span<const double> b, const Options& options) {
  return PhaseOne(a, b, options).run();
}

}  // namespace monogamy::lp
