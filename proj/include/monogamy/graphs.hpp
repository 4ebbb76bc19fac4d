#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace monogamy::graphs {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph. Edges are stored with i < j in the order given.
class Graph {
 public:
  Graph(std::size_t n, std::vector<Edge> edges, std::string tag = "custom", bool edge_transitive = false,
        bool vertex_transitive = false);

  std::size_t n() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::string& tag() const noexcept { return tag_; }
  // Asserted by catalog constructors, not computed. User graphs default to
  // false and must opt in.
  bool edge_transitive() const noexcept { return edge_transitive_; }
  bool vertex_transitive() const noexcept { return vertex_transitive_; }
  bool symmetric() const noexcept { return edge_transitive_ && vertex_transitive_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::string tag_;
  bool edge_transitive_;
  bool vertex_transitive_;
};

Graph ring(std::size_t n);
Graph complete(std::size_t n);
/// Star with `leaves` leaves; vertex 0 is the center.
Graph star(std::size_t leaves);
/// tetrahedron, cube, octahedron, dodecahedron or icosahedron.
Graph platonic(const std::string& name);
const std::vector<std::string>& platonic_names();
/// Honeycomb on an a x b torus of unit cells, two sites per cell:
/// A(x,y) = 2(x + a*y), B(x,y) = A(x,y) + 1. Each A bonds to B(x,y),
/// B(x-1,y) and B(x,y-1). Needs a, b >= 2.
Graph hex_torus(std::size_t a, std::size_t b);
/// Triangular lattice on an a x b torus; site (x,y) = x + a*y bonds to
/// (x+1,y), (x,y+1) and (x+1,y+1). Needs a, b >= 3.
Graph tri_torus(std::size_t a, std::size_t b);

Eigen::MatrixXd adjacency(const Graph& g);
std::vector<std::size_t> degree(const Graph& g);
/// Ascending eigenvalues of the adjacency matrix.
std::vector<double> spectrum(const Graph& g);
bool connected(const Graph& g);
/// All vertices share one degree.
bool regular(const Graph& g);

}  // namespace monogamy::graphs
