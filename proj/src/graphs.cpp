#include "monogamy/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "monogamy/error.hpp"

namespace monogamy::graphs {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string sized(const char* family, std::size_t a) { return std::string(family) + "(" + std::to_string(a) + ")"; }

std::string sized(const char* family, std::size_t a, std::size_t b) {
  return std::string(family) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::string tag, bool edge_transitive, bool vertex_transitive)
    : n_(n),
      edges_(std::move(edges)),
      tag_(std::move(tag)),
      edge_transitive_(edge_transitive),
      vertex_transitive_(vertex_transitive) {
  if (n_ == 0) fail(ErrorCode::InvalidArgument, "graph needs at least one vertex");
  std::set<Edge> seen;
  for (auto& [i, j] : edges_) {
    if (i >= n_ || j >= n_) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (i == j) fail(ErrorCode::InvalidArgument, "self-loop on vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
    if (!seen.insert({i, j}).second) {
      fail(ErrorCode::InvalidArgument, "repeated edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
}

Graph ring(std::size_t n) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "ring needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges), sized("ring", n), true, true);
}

Graph complete(std::size_t n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, std::move(edges), sized("complete", n), true, true);
}

Graph star(std::size_t leaves) {
  if (leaves < 1) fail(ErrorCode::InvalidArgument, "star needs at least one leaf");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  // A single leaf is just an edge, which is also vertex-transitive.
  return Graph(leaves + 1, std::move(edges), sized("star", leaves), true, leaves == 1);
}

const std::vector<std::string>& platonic_names() {
  static const std::vector<std::string> names{"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"};
  return names;
}

Graph platonic(const std::string& name) {
  std::vector<Edge> e;
  std::size_t n = 0;
  if (name == "tetrahedron") {
    n = 4;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) e.emplace_back(i, j);
    }
  } else if (name == "cube") {
    n = 8;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t bit = 1; bit < 8; bit <<= 1) {
        if ((i & bit) == 0) e.emplace_back(i, i | bit);
      }
    }
  } else if (name == "octahedron") {
    // Antipodal pairs are (i, i+3).
    n = 6;
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) {
        if (j != i + 3) e.emplace_back(i, j);
      }
    }
  } else if (name == "dodecahedron") {
    // Generalized Petersen graph GP(10,2): outer u_i = i, inner v_i = 10 + i.
    n = 20;
    for (std::size_t i = 0; i < 10; ++i) {
      e.emplace_back(i, (i + 1) % 10);
      e.emplace_back(i, 10 + i);
      e.emplace_back(10 + i, 10 + (i + 2) % 10);
    }
  } else if (name == "icosahedron") {
    // 0 top, 1..5 upper pentagon, 6..10 lower pentagon, 11 bottom.
    n = 12;
    for (std::size_t i = 0; i < 5; ++i) {
      const std::size_t up = 1 + i, up_next = 1 + (i + 1) % 5;
      const std::size_t lo = 6 + i, lo_next = 6 + (i + 1) % 5;
      e.emplace_back(0, up);
      e.emplace_back(up, up_next);
      e.emplace_back(up, lo);
      e.emplace_back(up, lo_next);
      e.emplace_back(lo, lo_next);
      e.emplace_back(lo, 11);
    }
  } else {
    fail(ErrorCode::InvalidArgument, "unknown platonic solid '" + name + "'");
  }
  return Graph(n, std::move(e), name, true, true);
}

Graph hex_torus(std::size_t a, std::size_t b) {
  if (a < 2 || b < 2) fail(ErrorCode::InvalidArgument, "hex torus needs a, b >= 2");
  auto site_a = [a](std::size_t x, std::size_t y) { return 2 * (x + a * y); };
  std::vector<Edge> edges;
  for (std::size_t y = 0; y < b; ++y) {
    for (std::size_t x = 0; x < a; ++x) {
      const std::size_t s = site_a(x, y);
      edges.emplace_back(s, s + 1);
      edges.emplace_back(s, site_a((x + a - 1) % a, y) + 1);
      edges.emplace_back(s, site_a(x, (y + b - 1) % b) + 1);
    }
  }
  return Graph(2 * a * b, std::move(edges), sized("hex", a, b), a == b, a == b);
}

Graph tri_torus(std::size_t a, std::size_t b) {
  if (a < 3 || b < 3) fail(ErrorCode::InvalidArgument, "triangular torus needs a, b >= 3");
  auto site = [a](std::size_t x, std::size_t y) { return x + a * y; };
  std::vector<Edge> edges;
  for (std::size_t y = 0; y < b; ++y) {
    for (std::size_t x = 0; x < a; ++x) {
      const std::size_t xn = (x + 1) % a, yn = (y + 1) % b;
      edges.emplace_back(site(x, y), site(xn, y));
      edges.emplace_back(site(x, y), site(x, yn));
      edges.emplace_back(site(x, y), site(xn, yn));
    }
  }
  return Graph(a * b, std::move(edges), sized("tri", a, b), a == b, a == b);
}

Eigen::MatrixXd adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ix(g.n()), ix(g.n()));
  for (const auto& [i, j] : g.edges()) {
    a(ix(i), ix(j)) = 1.0;
    a(ix(j), ix(i)) = 1.0;
  }
  return a;
}

std::vector<std::size_t> degree(const Graph& g) {
  std::vector<std::size_t> d(g.n(), 0);
  for (const auto& [i, j] : g.edges()) {
    ++d[i];
    ++d[j];
  }
  return d;
}

std::vector<double> spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency(g), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

bool connected(const Graph& g) {
  std::vector<std::size_t> parent(g.n());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = g.n();
  for (const auto& [i, j] : g.edges()) {
    const std::size_t ri = find(i), rj = find(j);
    if (ri != rj) {
      parent[ri] = rj;
      --components;
    }
  }
  return components == 1;
}

bool regular(const Graph& g) {
  const auto d = degree(g);
  return std::all_of(d.begin(), d.end(), [&](std::size_t x) { return x == d.front(); });
}

}  // namespace monogamy::graphs
