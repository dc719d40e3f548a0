#include "tec/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "tec/errors.hpp"
#include "tec/rng.hpp"

namespace tec {

RegularGraph::RegularGraph(IntMatrix adjacency, std::string name)
    : adjacency_(std::move(adjacency)), name_(std::move(name)) {
  const Eigen::Index n = adjacency_.rows();
  if (n < 1 || adjacency_.cols() != n) throw ArgumentError("adjacency must be a nonempty square matrix");
  if (adjacency_.minCoeff() < 0) throw ArgumentError("adjacency entries must be nonnegative");
  if (adjacency_ != adjacency_.transpose()) throw ArgumentError("adjacency must be symmetric");
  const long d = adjacency_.row(0).sum();
  for (Eigen::Index v = 0; v < n; ++v)
    if (adjacency_.row(v).sum() != d) throw ArgumentError("graph is not regular: row " + std::to_string(v));
  if (d < 1) throw ArgumentError("degree must be >= 1");
  degree_ = static_cast<std::size_t>(d);

  slots_.reserve(static_cast<std::size_t>(n) * degree_);
  for (Eigen::Index v = 0; v < n; ++v)
    for (Eigen::Index u = 0; u < n; ++u)
      for (long m = 0; m < adjacency_(v, u); ++m) slots_.push_back(static_cast<std::size_t>(u));
}

Eigen::MatrixXd normalized_adjacency(const RegularGraph& g) {
  return g.adjacency().cast<double>() / static_cast<double>(g.degree());
}

double spectral_expansion(const RegularGraph& g) {
  if (g.n() == 1) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_adjacency(g));
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed on normalized adjacency");
  // Ascending eigenvalues; the top one is the trivial eigenvalue 1.
  const Eigen::VectorXd mu = es.eigenvalues();
  if (std::abs(mu(mu.size() - 1) - 1.0) > 1e-9) throw NumericalError("top eigenvalue of A/d is not 1");
  return std::min(1.0, mu.head(mu.size() - 1).cwiseAbs().maxCoeff());
}

RegularGraph gen_complete(std::size_t n) {
  if (n < 2) throw ArgumentError("complete graph needs n >= 2");
  const auto s = static_cast<Eigen::Index>(n);
  IntMatrix a = IntMatrix::Ones(s, s);
  a.diagonal().setZero();
  return RegularGraph(std::move(a), "K" + std::to_string(n));
}

RegularGraph gen_cycle(std::size_t n) {
  if (n < 3) throw ArgumentError("cycle needs n >= 3");
  const auto s = static_cast<Eigen::Index>(n);
  IntMatrix a = IntMatrix::Zero(s, s);
  for (Eigen::Index v = 0; v < s; ++v) {
    a(v, (v + 1) % s) += 1;
    a((v + 1) % s, v) += 1;
  }
  return RegularGraph(std::move(a), "C" + std::to_string(n));
}

RegularGraph gen_hypercube(std::size_t dim) {
  if (dim < 1 || dim > 16) throw ArgumentError("hypercube dimension must be in [1, 16]");
  const Eigen::Index n = Eigen::Index{1} << dim;
  IntMatrix a = IntMatrix::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v)
    for (std::size_t b = 0; b < dim; ++b) a(v, v ^ (Eigen::Index{1} << b)) = 1;
  return RegularGraph(std::move(a), "Q" + std::to_string(dim));
}

RegularGraph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 2 || d < 1) throw ArgumentError("random regular graph needs n >= 2 and d >= 1");
  if (d % 2 == 1 && n % 2 == 1) throw ArgumentError("n * d must be even");
  Rng rng = make_rng(seed, 0);
  const auto s = static_cast<Eigen::Index>(n);
  IntMatrix a = IntMatrix::Zero(s, s);
  std::vector<std::size_t> perm(n);
  for (std::size_t p = 0; p < d / 2; ++p) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t v = 0; v < n; ++v) {
      const auto u = static_cast<Eigen::Index>(perm[v]);
      a(static_cast<Eigen::Index>(v), u) += 1;
      a(u, static_cast<Eigen::Index>(v)) += 1;
    }
  }
  if (d % 2 == 1) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; i += 2) {
      const auto u = static_cast<Eigen::Index>(perm[i]);
      const auto v = static_cast<Eigen::Index>(perm[i + 1]);
      a(u, v) += 1;
      a(v, u) += 1;
    }
  }
  return RegularGraph(std::move(a), "random(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

WalkSample sample_walk(const RegularGraph& g, std::size_t length, std::uint64_t seed) {
  if (length < 1) throw ArgumentError("walk length must be >= 1");
  Rng rng = make_rng(seed, 0);
  std::uniform_int_distribution<std::size_t> start(0, g.n() - 1);
  std::uniform_int_distribution<std::size_t> slot(0, g.degree() - 1);
  WalkSample w;
  w.seed = seed;
  w.vertices.reserve(length);
  w.vertices.push_back(start(rng));
  for (std::size_t j = 1; j < length; ++j) w.vertices.push_back(g.neighbor(w.vertices.back(), slot(rng)));
  return w;
}

void write_edge_list(std::ostream& os, const RegularGraph& g) {
  const IntMatrix& a = g.adjacency();
  os << g.n() << ' ' << g.degree() << '\n';
  for (Eigen::Index u = 0; u < a.rows(); ++u)
    for (Eigen::Index v = u; v < a.cols(); ++v)
      if (a(u, v) > 0) os << u << ' ' << v << ' ' << a(u, v) << '\n';
}

RegularGraph read_edge_list(std::istream& is, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + what);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) fail("missing \"n d\" header");
  long n = 0, d = 0;
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> n >> d) || (ls >> extra) || n < 1 || d < 1) fail("header must be \"n d\" with n, d >= 1");
  }
  IntMatrix a = IntMatrix::Zero(n, n);
  while (next_line()) {
    std::istringstream ls(line);
    long u = 0, v = 0, m = 0;
    std::string extra;
    if (!(ls >> u >> v >> m) || (ls >> extra)) fail("expected \"u v m\"");
    if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex index out of range");
    if (m < 1) fail("multiplicity must be >= 1");
    a(u, v) += m;
    if (u != v) a(v, u) += m;
  }
  for (Eigen::Index v = 0; v < n; ++v)
    if (a.row(v).sum() != d) {
      line_no = 0;
      fail("vertex " + std::to_string(v) + " has degree " + std::to_string(a.row(v).sum()) + ", header says " +
           std::to_string(d));
    }
  return RegularGraph(std::move(a), source_name);
}

RegularGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge list " + path);
  return read_edge_list(in, path);
}

void save_edge_list(const std::string& path, const RegularGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write edge list " + path);
  write_edge_list(out, g);
  if (!out) throw Error("write failed for " + path);
}

}  // namespace tec
