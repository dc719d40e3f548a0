#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tec {

using IntMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;

/// Undirected d-regular multigraph. Self-loops and parallel edges are
/// allowed; A(v, v) counts the edge slots at v that lead back to v.
class RegularGraph {
 public:
  /// Validates symmetry, nonnegativity and constant row sum.
  explicit RegularGraph(IntMatrix adjacency, std::string name = "graph");

  std::size_t n() const { return static_cast<std::size_t>(adjacency_.rows()); }
  std::size_t degree() const { return degree_; }
  const IntMatrix& adjacency() const { return adjacency_; }
  const std::string& name() const { return name_; }

  /// Neighbor reached through edge slot `slot` in [0, d) at vertex v.
  std::size_t neighbor(std::size_t v, std::size_t slot) const { return slots_[v * degree_ + slot]; }

 private:
  IntMatrix adjacency_;
  std::size_t degree_ = 0;
  std::string name_;
  std::vector<std::size_t> slots_;
};

/// A / d.
Eigen::MatrixXd normalized_adjacency(const RegularGraph& g);

/// Largest |mu_i| over the nontrivial eigenvalues of A / d (0 when n = 1).
double spectral_expansion(const RegularGraph& g);

RegularGraph gen_complete(std::size_t n);
RegularGraph gen_cycle(std::size_t n);
RegularGraph gen_hypercube(std::size_t dim);
/// Sum of floor(d/2) random permutations P + P^T, plus a random perfect
/// matching when d is odd (needs n even). A fixed point of a permutation
/// contributes two self-loop slots.
RegularGraph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

struct WalkSample {
  std::vector<std::size_t> vertices;
  std::uint64_t seed = 0;
  std::size_t length() const { return vertices.size(); }
};

/// Stationary walk: uniform start, then a uniform edge slot per step.
WalkSample sample_walk(const RegularGraph& g, std::size_t length, std::uint64_t seed);

/// Edge list: "n d" header, then "u v m" lines.
void write_edge_list(std::ostream& os, const RegularGraph& g);
RegularGraph read_edge_list(std::istream& is, const std::string& source_name = "<stream>");
RegularGraph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const RegularGraph& g);

}  // namespace tec
