#pragma once

// Small unconstrained minimizer shared by the variational routines.

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace monogamy::detail {

struct MinimizeOptions {
  double fd_step = 1e-6;       // central-difference step
  double gradient_tol = 1e-9;
  double value_tol = 1e-14;    // stop when an accepted step improves less than this
  int max_iterations = 400;
  double max_norm = 25.0;      // abandon runs that drift to infinity
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

inline Eigen::VectorXd central_gradient(const Objective& f, Eigen::VectorXd x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    x(i) = xi + h;
    const double up = f(x);
    x(i) = xi - h;
    const double down = f(x);
    x(i) = xi;
    g(i) = (up - down) / (2.0 * h);
  }
  return g;
}

/// BFGS with Armijo backtracking on numerical gradients.
inline MinimizeResult minimize(const Objective& f, Eigen::VectorXd x, const MinimizeOptions& opt = {}) {
  const Eigen::Index n = x.size();
  MinimizeResult r;
  double fx = f(x);
  Eigen::VectorXd g = central_gradient(f, x, opt.fd_step);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);

  for (r.iterations = 0; r.iterations < opt.max_iterations; ++r.iterations) {
    if (g.norm() <= opt.gradient_tol) {
      r.converged = true;
      break;
    }
    Eigen::VectorXd dir = -h_inv * g;
    if (dir.dot(g) >= 0.0) {
      h_inv.setIdentity();
      dir = -g;
    }
    double step = 1.0;
    Eigen::VectorXd x_new;
    double f_new = fx;
    bool accepted = false;
    for (int k = 0; k < 50; ++k) {
      x_new = x + step * dir;
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * g.dot(dir)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      r.converged = g.norm() <= 1e-6;
      break;
    }
    const Eigen::VectorXd g_new = central_gradient(f, x_new, opt.fd_step);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double improvement = fx - f_new;
    x = x_new;
    fx = f_new;
    g = g_new;
    if (x.norm() > opt.max_norm) break;
    if (improvement < opt.value_tol) {
      r.converged = true;
      break;
    }
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      h_inv = (id - rho * s * y.transpose()) * h_inv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
  }
  r.x = std::move(x);
  r.value = fx;
  return r;
}

}  // namespace monogamy::detail
