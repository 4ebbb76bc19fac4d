// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "monogamy/gaussian.hpp"
#include "monogamy/graphs.hpp"
#include "monogamy/marginals.hpp"
#include "monogamy/quantum.hpp"
#include "monogamy/scenarios.hpp"
#include "monogamy/spin.hpp"
#include "support.hpp"

using namespace monogamy;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Suite {
 public:
  void run(int id, const std::string& title, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
    failures_ += v.pass ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Random forest over k observables with edge tables cut from one random
// joint, some outcomes made impossible.
MarginalScenario random_acyclic(testing::Rng& rng) {
  std::uniform_int_distribution<std::size_t> count(1, 8), alphabet(2, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = count(rng);
  Scope scope;
  for (std::size_t v = 0; v < k; ++v) scope.push_back({"V" + std::to_string(v), alphabet(rng)});

  std::vector<double> values = testing::random_simplex(rng, scope_volume(scope), 0.2);
  const auto strides = DistTable(scope, values).strides();
  for (std::size_t v = 0; v < k; ++v) {
    if (unit(rng) >= 0.2) continue;
    const std::size_t dead = std::uniform_int_distribution<std::size_t>(0, scope[v].k - 1)(rng);
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
      if ((flat / strides[v]) % scope[v].k == dead) values[flat] = 0.0;
    }
  }
  double total = 0.0;
  for (double x : values) total += x;
  if (total == 0.0) values.assign(values.size(), 1.0 / values.size());
  else for (double& x : values) x /= total;
  const DistTable joint(scope, values);

  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t v = 1; v < k; ++v) {
    if (unit(rng) < 0.85) {
      const std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
      pairs.emplace_back(scope[u].id, scope[v].id);
    }
  }
  return scenario_from_joint(joint, pairs);
}

Verdict triangle() {
  const auto scenario = scenarios::triangle_anticorrelation();
  const auto start = std::chrono::steady_clock::now();
  const auto result = joint_feasible(scenario);
  const double secs = seconds_since(start);
  if (is_feasible(result)) return {false, "reported feasible"};
  const auto& w = std::get<BellWitness>(result);
  const double value = evaluate_witness(w, scenario);
  const double best = deterministic_maximum(w, scenario);
  const bool ok = value > w.bound + 1e-9 && best <= w.bound + 1e-9 && secs < 1.0;
  return {ok, fmt("witness value %.6f, deterministic max %.6f, bound %.6f", value, best, w.bound)};
}

Verdict tree_soundness() {
  testing::Rng rng(101);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int infeasible = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto scenario = random_acyclic(rng);
    const DistTable ext = tree_extend(scenario);
    for (const auto& e : scenario.edges()) {
      const std::vector<std::string> ids{scenario.observables()[e.i].id, scenario.observables()[e.j].id};
      worst = std::max(worst, max_abs_difference(project(ext, ids), e.table));
    }
    if (!is_feasible(joint_feasible(scenario))) ++infeasible;
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-9 && infeasible == 0 && secs < 30.0,
          fmt("500 scenarios, worst edge error %.2e, %d infeasible", worst, infeasible)};
}

Verdict lhv_round_trip() {
  testing::Rng rng(202);
  std::uniform_int_distribution<std::size_t> count(2, 5), alphabet(2, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Scope scope;
    const std::size_t k = count(rng);
    for (std::size_t v = 0; v < k; ++v) scope.push_back({"X" + std::to_string(v), alphabet(rng)});
    const DistTable joint = testing::random_table(rng, scope, 0.3);
    Partition part;
    const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, k - 1)(rng);
    for (std::size_t v = 0; v < k; ++v) (v < cut ? part.left : part.right).push_back(scope[v].id);
    const auto ids = joint.ids();
    worst = std::max(worst, max_abs_difference(joint_from_lhv(lhv_from_joint(joint, part), ids), joint));
  }
  return {worst <= 1e-12, fmt("200 joints, worst entry error %.2e", worst)};
}

Verdict chsh_boundary() {
  const double threshold = 1.0 / std::numbers::sqrt2;
  int disagreements = 0;
  auto feasible = [&](double v) {
    const bool lp = is_feasible(joint_feasible(scenarios::chsh(v)));
    if (lp != (2.0 * std::numbers::sqrt2 * v <= 2.0)) ++disagreements;
    return lp;
  };
  const bool singlet = feasible(1.0);
  const bool mixed = feasible(0.70);
  double lo = 0.5, hi = 1.0;
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  const bool bracketed = lo <= threshold && threshold <= hi && threshold - lo <= 0.01 && hi - threshold <= 0.01;
  return {!singlet && mixed && bracketed && disagreements == 0,
          fmt("singlet %s, v=0.70 %s, threshold in [%.4f, %.4f], %d analytic disagreements",
              singlet ? "feasible" : "infeasible", mixed ? "feasible" : "infeasible", lo, hi, disagreements)};
}

Verdict symmetric_extension() {
  testing::Rng rng(303);
  const auto start = std::chrono::steady_clock::now();
  int infeasible = 0;
  std::uniform_int_distribution<std::size_t> copies(2, 3), a_count(1, 3), rank(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = copies(rng), k = a_count(rng);
    std::vector<std::size_t> dims(m + 1, 2);
    std::vector<quantum::FactorPermutation> gens;
    quantum::FactorPermutation cycle(m + 1), swap(m + 1);
    for (std::size_t f = 0; f <= m; ++f) cycle[f] = swap[f] = f;
    for (std::size_t f = 1; f <= m; ++f) cycle[f] = f == m ? 1 : f + 1;
    std::swap(swap[1], swap[2]);
    gens = {cycle, swap};
    const auto rho = quantum::twirl(testing::random_density(rng, dims, rank(rng)), gens);

    std::vector<quantum::Povm> f, g;
    for (std::size_t i = 0; i < k; ++i) f.push_back(testing::random_qubit_povm(rng));
    for (std::size_t j = 0; j < m; ++j) g.push_back(testing::random_qubit_povm(rng));

    std::vector<ObservableDecl> obs;
    for (std::size_t i = 0; i < k; ++i) obs.push_back({"A" + std::to_string(i + 1), 2});
    for (std::size_t j = 0; j < m; ++j) obs.push_back({"B" + std::to_string(j + 1), 2});
    std::vector<EdgeSpec> edges;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t keep[] = {0, j + 1};
      const auto rho_ab = quantum::partial_trace(rho, keep);
      for (std::size_t i = 0; i < k; ++i) {
        const quantum::Povm fi[] = {f[i]}, gj[] = {g[j]};
        const DistTable t = quantum::born_pairs(rho_ab, fi, gj)[0];
        const std::string a = obs[i].id, b = obs[k + j].id;
        edges.push_back({a, b, DistTable({{a, 2}, {b, 2}}, std::vector<double>(t.values().begin(), t.values().end()))});
      }
    }
    if (!is_feasible(joint_feasible(MarginalScenario(obs, edges)))) ++infeasible;
  }
  const double secs = seconds_since(start);
  return {infeasible == 0 && secs < 120.0, fmt("100 extendible states, %d infeasible", infeasible)};
}

Verdict ring_limit() {
  const double eof = gaussian::max_nn_eof(graphs::ring(2000));
  const auto limit = gaussian::ring_limit();
  const bool ok = eof >= 0.293 && eof <= 0.304 && std::abs(limit.delta - 2.0 / std::numbers::pi) <= 1e-12 &&
                  std::abs(limit.eof - 0.2984) <= 5e-4;
  return {ok, fmt("eof(ring 2000) = %.6f, limit delta = %.12f, limit eof = %.6f", eof, limit.delta, limit.eof)};
}

Verdict odd_even() {
  std::vector<double> eof(41, 0.0);
  for (std::size_t n = 3; n <= 40; ++n) eof[n] = gaussian::max_nn_eof(graphs::ring(n));
  const double limit = gaussian::ring_limit().eof;
  bool ok = true;
  for (std::size_t n = 5; n <= 40; ++n) ok = ok && eof[n] < eof[n - 2];
  for (std::size_t n = 4; n <= 40; n += 2) ok = ok && eof[n] > eof[n - 1] && (n == 40 || eof[n] > eof[n + 1]);
  for (std::size_t n = 3; n <= 40; ++n) ok = ok && eof[n] > limit;
  const double gap_even = eof[40] - limit, gap_odd = eof[39] - limit;
  ok = ok && gap_even < 0.1 * (eof[4] - limit) && gap_odd < 0.1 * (eof[3] - limit);
  return {ok, fmt("eof(39) - limit = %.2e, eof(40) - limit = %.2e", gap_odd, gap_even)};
}

Verdict cluster_scaling() {
  auto scaled = [](double eof, double n) { return eof * n * n / std::log2(n); };
  const double g100 = scaled(gaussian::max_nn_eof(graphs::complete(100)), 100);
  const double g400 = scaled(gaussian::max_nn_eof(graphs::complete(400)), 400);
  const double q100 = scaled(spin::eof_from_concurrence(2.0 / 100), 100);
  const double q400 = scaled(spin::eof_from_concurrence(2.0 / 400), 400);
  const double gv = std::abs(g100 - g400) / std::max(g100, g400);
  const double qv = std::abs(q100 - q400) / std::max(q100, q400);
  return {gv < 0.1 && qv < 0.1, fmt("gaussian %.4f -> %.4f (%.1f%%), qubit %.4f -> %.4f (%.1f%%)", g100, g400,
                                    100 * gv, q100, q400, 100 * qv)};
}

Verdict qubit_above_gaussian() {
  const auto qubit = spin::qubit_cluster_curve(50);
  int below = 0, too_far = 0;
  double worst = 0.0;
  std::size_t worst_n = 0, first_far = 0;
  for (const auto& row : qubit) {
    if (row.n < 3) continue;
    const double g = gaussian::max_nn_eof(graphs::complete(row.n));
    const double ratio = row.eof / g;
    if (row.eof <= g) ++below;
    if (ratio >= 2.0) {
      ++too_far;
      if (first_far == 0) first_far = row.n;
    }
    if (ratio > worst) {
      worst = ratio;
      worst_n = row.n;
    }
  }
  return {below == 0 && too_far == 0,
          fmt("%d sizes with qubit <= gaussian, %d with ratio >= 2 (first N = %zu, max %.3f at N = %zu)", below,
              too_far, first_far, worst, worst_n)};
}

Verdict singlet_fraction() {
  std::vector<std::pair<std::size_t, double>> points;
  for (std::size_t n : {8u, 10u, 12u}) points.emplace_back(n, spin::max_singlet_fraction(graphs::ring(n)));
  const double f_inf = spin::fit_inverse_square(points).f_inf;
  auto dense = [](std::size_t n) {
    const spin::SpinHamiltonian h(graphs::ring(n), -spin::singlet_projector());
    Eigen::SelfAdjointEigenSolver<quantum::CMatrix> es(h.assembled(), Eigen::EigenvaluesOnly);
    return -es.eigenvalues()(0) / static_cast<double>(n);
  };
  const double f3 = spin::max_singlet_fraction(graphs::ring(3)), f4 = spin::max_singlet_fraction(graphs::ring(4));
  const double d3 = dense(3), d4 = dense(4);
  const bool ok = std::abs(f_inf - std::numbers::ln2) <= 0.01 && std::abs(f3 - 0.5) <= 1e-8 &&
                  std::abs(d3 - 0.5) <= 1e-8 && std::abs(f4 - 0.75) <= 1e-8 && std::abs(d4 - 0.75) <= 1e-8;
  return {ok, fmt("f_inf = %.6f (ln 2 = %.6f), f(3) = %.10f, f(4) = %.10f", f_inf, std::numbers::ln2, f3, f4)};
}

Verdict concurrence_duality() {
  testing::Rng rng(404);
  const auto start = std::chrono::steady_clock::now();
  std::uniform_int_distribution<std::size_t> rank(1, 4);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = testing::random_density(rng, {2, 2}, rank(rng));
    const double v = spin::concurrence_variational(rho).concurrence;
    worst = std::max(worst, std::abs(v - spin::concurrence_wootters(rho)));
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-4 && secs < 60.0, fmt("200 states, worst difference %.2e", worst)};
}

Verdict energy_oracle() {
  std::vector<graphs::Graph> catalog;
  for (std::size_t n = 3; n <= 64; ++n) catalog.push_back(graphs::ring(n));
  for (std::size_t n = 2; n <= 64; ++n) catalog.push_back(graphs::complete(n));
  for (std::size_t l = 1; l <= 63; ++l) catalog.push_back(graphs::star(l));
  for (const auto& name : graphs::platonic_names()) catalog.push_back(graphs::platonic(name));
  for (std::size_t a = 2; 4 * a <= 64; ++a) {
    for (std::size_t b = 2; 2 * a * b <= 64; ++b) catalog.push_back(graphs::hex_torus(a, b));
  }
  for (std::size_t a = 3; 3 * a <= 64; ++a) {
    for (std::size_t b = 3; a * b <= 64; ++b) catalog.push_back(graphs::tri_torus(a, b));
  }
  double worst = 0.0;
  for (const auto& g : catalog) {
    const auto pair = gaussian::hamiltonian_pair(g);
    worst = std::max(worst, std::abs(gaussian::ground_energy(pair) - gaussian::symplectic_energy(pair)));
  }
  const double edge = gaussian::ground_energy(gaussian::hamiltonian_pair(graphs::complete(2)));
  return {worst <= 1e-8 && std::abs(edge) <= 1e-8,
          fmt("%zu graphs, worst difference %.2e, single edge e0 = %.1e", catalog.size(), worst, edge)};
}

Verdict eof_oracle() {
  double worst = 0.0;
  for (double r : {0.3, 0.7, 1.2}) {
    const double c = std::cosh(r) * std::cosh(r), s = std::sinh(r) * std::sinh(r);
    const double expected = c * std::log2(c) - s * std::log2(s);
    worst = std::max(worst, std::abs(gaussian::eof_symmetric(std::exp(-2.0 * r)) - expected));
  }
  return {worst <= 1e-9, fmt("worst difference %.2e", worst)};
}

}  // namespace

int main() {
  Suite suite;
  suite.run(1, "triangle frustration", triangle);
  suite.run(2, "tree extension soundness", tree_soundness);
  suite.run(3, "joint/LHV round trip", lhv_round_trip);
  suite.run(4, "CHSH boundary", chsh_boundary);
  suite.run(5, "symmetric extensions are local", symmetric_extension);
  suite.run(6, "Gaussian ring limit", ring_limit);
  suite.run(7, "odd-even ring structure", odd_even);
  suite.run(8, "cluster N^-2 log N scaling", cluster_scaling);
  suite.run(9, "qubit cluster above Gaussian, ratio < 2", qubit_above_gaussian);
  suite.run(10, "singlet fraction limit", singlet_fraction);
  suite.run(11, "concurrence duality", concurrence_duality);
  suite.run(12, "ground energy oracle", energy_oracle);
  suite.run(13, "squeezed-state eof oracle", eof_oracle);
  std::printf("%d of 13 criteria failed\n", suite.failures());
  return suite.failures() == 0 ? 0 : 1;
}
