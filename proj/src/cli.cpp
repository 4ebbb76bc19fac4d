#include "monogamy/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "monogamy/error.hpp"
#include "monogamy/gaussian.hpp"
#include "monogamy/io.hpp"
#include "monogamy/marginals.hpp"
#include "monogamy/scenarios.hpp"
#include "monogamy/spin.hpp"

namespace monogamy::cli {

namespace {

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapExceeded:
    case ErrorCode::GroupTooLarge:
      return kCapExceeded;
    case ErrorCode::NumericalFailure:
      return kFailure;
    default:
      return kInputError;
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  file << text;
}

std::uint64_t resolve_seed() {
  const char* env = std::getenv("MONOGAMY_SEED");
  if (env == nullptr || *env == '\0') return default_seed();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || *env == '-') fail(ErrorCode::InvalidArgument, std::string("MONOGAMY_SEED is not an unsigned integer: ") + env);
  return v;
}

/// "a..b" or a single size.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const std::size_t v = std::stoul(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    const std::size_t a = std::stoul(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    const std::size_t b = std::stoul(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    if (a > b) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidArgument, "expected a range like 3..12, got '" + text + "'");
  }
}

std::string gaussian_csv(gaussian::Family family, std::size_t n_min, std::size_t n_max) {
  const auto rows = gaussian::scan(family, n_min, n_max);
  const bool cluster = family == gaussian::Family::Cluster;
  std::ostringstream csv;
  csv << "N,vq,vp,delta,eof_ebits,e0_per_mode" << (cluster ? ",eof_n2_over_log2n" : "") << "\n";
  for (const auto& r : rows) {
    csv << r.n << ',' << format_number(r.epr.vq) << ',' << format_number(r.epr.vp) << ','
        << format_number(r.epr.delta) << ',' << format_number(r.eof) << ',' << format_number(r.e0_per_mode);
    if (cluster) {
      const double x = static_cast<double>(r.n);
      csv << ',' << format_number(r.eof * x * x / std::log2(x));
    }
    csv << "\n";
  }
  const auto limit = gaussian::ring_limit();
  csv << "# ring_limit_delta=" << format_number(limit.delta) << "\n";
  csv << "# ring_limit_eof=" << format_number(limit.eof) << "\n";
  csv << "# qubit_chain_reference_eof=0.29\n";
  return csv.str();
}

std::string spin_csv(std::size_t lo, std::size_t hi) {
  if (lo < 3) fail(ErrorCode::InvalidArgument, "rings need at least 3 sites");
  if (hi > spin::kMaxQubits) fail(ErrorCode::CapExceeded, "rings beyond 14 sites exceed the dense cap");
  std::ostringstream csv;
  csv << "N,f_max\n";
  std::vector<std::pair<std::size_t, double>> even, odd;
  for (std::size_t n = lo; n <= hi; ++n) {
    const double f = spin::max_singlet_fraction(graphs::ring(n));
    csv << n << ',' << format_number(f) << "\n";
    (n % 2 == 0 ? even : odd).emplace_back(n, f);
  }
  auto tail = [](std::vector<std::pair<std::size_t, double>> v) {
    if (v.size() > 3) v.erase(v.begin(), v.end() - 3);
    return v;
  };
  if (even.size() >= 2) {
    const double f = spin::fit_inverse_square(tail(even)).f_inf;
    csv << "# f_inf=" << format_number(f) << "\n";
    csv << "# f_inf_even=" << format_number(f) << "\n";
  }
  if (odd.size() >= 2) csv << "# f_inf_odd=" << format_number(spin::fit_inverse_square(tail(odd)).f_inf) << "\n";
  csv << "# ln2=" << format_number(std::log(2.0)) << "\n";
  return csv.str();
}

std::string compare_csv(std::size_t n_max) {
  const auto qubit = spin::qubit_cluster_curve(n_max);
  const auto gauss = gaussian::scan(gaussian::Family::Cluster, 2, n_max);
  std::ostringstream csv;
  csv << "N,eof_qubit,eof_gaussian\n";
  for (std::size_t i = 0; i < qubit.size(); ++i) {
    csv << qubit[i].n << ',' << format_number(qubit[i].eof) << ',' << format_number(gauss[i].eof) << "\n";
  }
  return csv.str();
}

std::string qubit_csv(std::size_t n_max) {
  std::ostringstream csv;
  csv << "N,concurrence,eof\n";
  for (const auto& r : spin::qubit_cluster_curve(n_max)) {
    csv << r.n << ',' << format_number(r.concurrence) << ',' << format_number(r.eof) << "\n";
  }
  return csv.str();
}

}  // namespace

std::uint64_t default_seed() { return spin::kDefaultSeed; }

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monogamy of correlations: marginal feasibility, spin and Gaussian curves", "monogamy"};
  app.require_subcommand(1);

  std::string out_path;
  std::string scenario_path;
  auto* bell = app.add_subcommand("bell-check", "Decide whether a scenario's pair tables admit a joint distribution");
  bell->add_option("scenario", scenario_path, "Scenario JSON")->required();

  std::string family;
  std::size_t n_min = 3, n_max = 50;
  auto* gscan = app.add_subcommand("gaussian-scan", "Nearest-neighbour Gaussian entanglement curve");
  gscan->add_option("--family", family, "ring | cluster | hex | tri | platonic")->required();
  gscan->add_option("--n-min", n_min, "Smallest size (torus side for hex/tri)");
  gscan->add_option("--n-max", n_max, "Largest size (torus side for hex/tri)");
  gscan->add_option("--out", out_path, "CSV path (default: stdout)");

  std::string rings = "3..12";
  auto* sscan = app.add_subcommand("spin-scan", "Maximal singlet fraction on qubit rings");
  sscan->add_option("--rings", rings, "Ring sizes, a..b");
  sscan->add_option("--out", out_path, "CSV path (default: stdout)");

  std::size_t cluster_max = 20;
  auto* compare = app.add_subcommand("cluster-compare", "Qubit versus Gaussian cluster entanglement");
  compare->add_option("--n-max", cluster_max, "Largest cluster size");
  compare->add_option("--out", out_path, "CSV path (default: stdout)");

  auto* qcluster = app.add_subcommand("qubit-cluster", "Permutation-invariant qubit cluster curve");
  qcluster->add_option("--n-max", cluster_max, "Largest cluster size");
  qcluster->add_option("--out", out_path, "CSV path (default: stdout)");

  double visibility = 1.0;
  auto* chsh = app.add_subcommand("chsh-scenario", "Write the CHSH scenario for a noisy singlet");
  chsh->add_option("--visibility", visibility, "Singlet weight v in [0, 1]");
  chsh->add_option("--out", out_path, "JSON path (default: stdout)");

  std::string state_path;
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  auto* conc = app.add_subcommand("concurrence", "Wootters and variational concurrence of a two-qubit state");
  conc->add_option("state", state_path, "Density operator JSON")->required();
  conc->add_option("--restarts", restarts, "Random restarts");
  auto* seed_opt = conc->add_option("--seed", seed, "RNG seed (default: MONOGAMY_SEED or the built-in constant)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*bell) {
      const auto scenario = io::scenario_from_json(io::read_file(scenario_path));
      const auto result = joint_feasible(scenario);
      out << io::to_json(result, scenario).dump(2) << "\n";
      if (is_feasible(result)) {
        err << "feasible: a joint distribution reproduces every edge table\n";
        return kOk;
      }
      const auto& w = std::get<BellWitness>(result);
      err << "infeasible: witness value " << format_number(w.value) << " exceeds local bound " << format_number(w.bound) << "\n";
      return kInfeasible;
    }
    if (*gscan) {
      emit(gaussian_csv(gaussian::parse_family(family), n_min, n_max), out_path, out);
      return kOk;
    }
    if (*sscan) {
      const auto [lo, hi] = parse_range(rings);
      emit(spin_csv(lo, hi), out_path, out);
      return kOk;
    }
    if (*compare) {
      emit(compare_csv(cluster_max), out_path, out);
      return kOk;
    }
    if (*qcluster) {
      emit(qubit_csv(cluster_max), out_path, out);
      return kOk;
    }
    if (*chsh) {
      emit(io::to_json(scenarios::chsh(visibility)).dump(2) + "\n", out_path, out);
      return kOk;
    }
    if (*conc) {
      if (seed_opt->count() == 0) seed = resolve_seed();
      const auto rho = io::density_from_json(io::read_file(state_path));
      const auto v = spin::concurrence_variational(rho, restarts, seed);
      const io::json doc{{"wootters", spin::concurrence_wootters(rho)},
                         {"variational", v.concurrence},
                         {"converged", v.converged},
                         {"seed", seed}};
      out << doc.dump(2) << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace monogamy::cli
