#include "tec/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "tec/errors.hpp"
#include "tec/norms.hpp"
#include "tec/parallel.hpp"
#include "tec/quadrature.hpp"
#include "tec/rng.hpp"
#include "tec/tensor_io.hpp"

namespace tec {

// Assignments ----------------------------------------------------------------

VertexTensorAssignment::VertexTensorAssignment(RegularGraph graph, std::vector<HermitianTensor> tensors)
    : graph_(std::move(graph)), tensors_(std::move(tensors)) {
  if (tensors_.size() != graph_.n()) {
    throw ArgumentError("assignment has " + std::to_string(tensors_.size()) + " tensors for " +
                        std::to_string(graph_.n()) + " vertices");
  }
  for (const auto& g : tensors_) {
    if (!g.shape().is_square()) throw ShapeError("vertex tensors must be square");
    if (!(g.shape() == tensors_.front().shape())) throw ShapeError("vertex tensors must share one shape");
    radius_ = std::max(radius_, spectral_norm(g.tensor()));
  }
}

VertexTensorAssignment random_assignment(RegularGraph graph, std::vector<std::size_t> dims, double radius,
                                         std::uint64_t seed, bool real) {
  if (!(radius >= 0) || !std::isfinite(radius)) throw ArgumentError("radius must be finite and >= 0");
  const TensorShape shape = TensorShape::square(std::move(dims));
  const auto d = static_cast<Eigen::Index>(shape.unfold_rows());
  std::vector<HermitianTensor> tensors;
  tensors.reserve(graph.n());
  for (std::size_t v = 0; v < graph.n(); ++v) {
    Rng rng = make_rng(seed, v);
    std::normal_distribution<double> normal;
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(normal(rng), real ? 0.0 : normal(rng));
    Matrix h = (m + m.adjoint()) / 2.0;
    const double norm = spectral_norm(Tensor(shape, h));
    if (norm > 0) h *= radius / norm;
    tensors.push_back(HermitianTensor(Tensor(shape, std::move(h))));
  }
  return {std::move(graph), std::move(tensors)};
}

VertexTensorAssignment load_assignment(RegularGraph graph, const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw ConfigError("cannot open manifest " + manifest.string());
  std::vector<std::optional<HermitianTensor>> slots(graph.n());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto where = manifest.string() + ":" + std::to_string(line_no) + ": ";
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long vertex = 0;
    std::string file, extra;
    if (!(ls >> vertex)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError(where + "expected \"<vertex> <tensor file>\"");
    }
    if (!(ls >> file) || (ls >> extra)) throw ConfigError(where + "expected \"<vertex> <tensor file>\"");
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= graph.n()) throw ConfigError(where + "vertex out of range");
    auto& slot = slots[static_cast<std::size_t>(vertex)];
    if (slot) throw ConfigError(where + "vertex listed twice");
    std::filesystem::path p(file);
    if (p.is_relative()) p = manifest.parent_path() / p;
    try {
      slot.emplace(load_tensor(p));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(where + e.what());
    }
  }
  std::vector<HermitianTensor> tensors;
  tensors.reserve(graph.n());
  for (std::size_t v = 0; v < slots.size(); ++v) {
    if (!slots[v]) throw ConfigError(manifest.string() + ": no tensor for vertex " + std::to_string(v));
    tensors.push_back(*slots[v]);
  }
  return {std::move(graph), std::move(tensors)};
}

// Polynomial -----------------------------------------------------------------

void PolynomialSpec::validate() const {
  if (coefficients.empty()) throw ArgumentError("polynomial needs at least one coefficient");
  for (double a : coefficients)
    if (!(a >= 0) || !std::isfinite(a)) throw ArgumentError("polynomial coefficients must be finite and >= 0");
  if (!(power >= 1) || !std::isfinite(power)) throw ArgumentError("polynomial power must be >= 1");
}

bool PolynomialSpec::is_identity() const {
  return power == 1.0 && coefficients.size() == 2 && coefficients[0] == 0.0 && coefficients[1] == 1.0;
}

double PolynomialSpec::operator()(double x) const {
  double base = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) base = base * x + *it;
  if (power == 1.0) return base;
  if (base < 0 && power != std::floor(power)) throw DomainError("negative base under a non-integer power");
  return std::pow(base, power);
}

void ChernoffParams::validate() const {
  if (kappa < 1) throw ArgumentError("walk length must be >= 1");
  if (!(theta > 0)) throw ArgumentError("threshold must be > 0");
  if (!(lambda_bar >= 0 && lambda_bar <= 1)) throw ArgumentError("1 - lambda must lie in [0, 1]");
  if (dim < 1 || k < 1 || k > dim) throw ArgumentError("Ky Fan index must satisfy 1 <= k <= dim");
  if (!(radius >= 0) || !std::isfinite(radius)) throw ArgumentError("radius must be finite and >= 0");
}

// Contraction constants ------------------------------------------------------

GammaBounds gamma_bounds(double t, double r, double a, double b, double lambda) {
  if (!(t >= 0) || !(r >= 0)) throw ArgumentError("t and r must be >= 0");
  if (!(lambda >= 0 && lambda <= 1)) throw ArgumentError("lambda must lie in [0, 1]");
  const double e = std::exp(t * r * std::hypot(a, b));
  return {e, lambda * (e - 1), e - 1, lambda * e};
}

namespace {

using Blocks = std::vector<Matrix>;

void check_capacity(const VertexTensorAssignment& as) {
  const std::size_t size = as.graph().n() * as.dim() * as.dim();
  if (size > kTransferCapacity) {
    throw CapacityError("transfer operator size n * dim^2 = " + std::to_string(size) + " exceeds " +
                        std::to_string(kTransferCapacity));
  }
}

/// exp(t (a + ib) g / 2) for every vertex.
std::vector<Matrix> half_exponentials(const VertexTensorAssignment& as, double t, double a, double b) {
  const Complex z = Complex(a, b) * (t / 2);
  std::vector<Matrix> out;
  out.reserve(as.tensors().size());
  for (const auto& g : as.tensors()) {
    const Spectrum s = hermitian_eig(g);
    const ComplexVector e = (s.eigenvalues.cast<Complex>() * z).array().exp();
    out.push_back(s.eigenvectors * e.asDiagonal() * s.eigenvectors.adjoint());
  }
  return out;
}

/// One application of F * (A/d (x) I). Block v is a dim x dim matrix X_v
/// holding the row-major vec; (E (x) conj E) vec(X) = vec(E X E^H).
Blocks apply_transfer(const RegularGraph& g, const std::vector<Matrix>& e, const Blocks& x) {
  const std::size_t n = g.n();
  const double inv_d = 1.0 / static_cast<double>(g.degree());
  Blocks y(n, Matrix::Zero(x[0].rows(), x[0].cols()));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < n; ++w) {
      const long m = g.adjacency()(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(w));
      if (m) y[u] += (static_cast<double>(m) * inv_d) * x[w];
    }
    y[u] = e[u] * y[u] * e[u].adjoint();
  }
  return y;
}

double blocks_norm(const Blocks& x) {
  double s = 0;
  for (const auto& b : x) s += b.squaredNorm();
  return std::sqrt(s);
}

/// Splits into the component along span{1 (x) e_i} and its complement.
std::pair<Blocks, Blocks> split_parallel(const Blocks& x) {
  Matrix mean = Matrix::Zero(x[0].rows(), x[0].cols());
  for (const auto& b : x) mean += b;
  mean /= static_cast<double>(x.size());
  Blocks par(x.size(), mean), perp(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) perp[v] = x[v] - mean;
  return {std::move(par), std::move(perp)};
}

}  // namespace

CertificateReport contraction_certificate(const VertexTensorAssignment& as, double t, double a, double b,
                                          std::size_t vectors, std::uint64_t seed) {
  check_capacity(as);
  if (vectors < 1) throw ArgumentError("certificate needs at least one test vector");
  CertificateReport rep;
  rep.lambda = spectral_expansion(as.graph());
  rep.gamma = gamma_bounds(t, as.radius(), a, b, rep.lambda);
  rep.vectors = vectors;
  const auto e = half_exponentials(as, t, a, b);
  const auto d = static_cast<Eigen::Index>(as.dim());
  const std::size_t n = as.graph().n();

  for (std::size_t i = 0; i < vectors; ++i) {
    Rng rng = make_rng(seed, i);
    std::normal_distribution<double> normal;
    Blocks u(n, Matrix(d, d));
    for (auto& blk : u)
      for (Eigen::Index p = 0; p < d; ++p)
        for (Eigen::Index q = 0; q < d; ++q) blk(p, q) = Complex(normal(rng), normal(rng));
    const auto [par, perp] = split_parallel(u);
    const double np = blocks_norm(par), nq = blocks_norm(perp);

    const auto [pp, pq] = split_parallel(apply_transfer(as.graph(), e, par));
    const auto [qp, qq] = split_parallel(apply_transfer(as.graph(), e, perp));
    const double ratios[4] = {blocks_norm(pp) / np, blocks_norm(qp) / nq, blocks_norm(pq) / np, blocks_norm(qq) / nq};
    for (int part = 0; part < 4; ++part)
      if (std::isfinite(ratios[part])) rep.worst_ratio[part] = std::max(rep.worst_ratio[part], ratios[part]);
  }
  const double gam[4] = {rep.gamma.g1, rep.gamma.g2, rep.gamma.g3, rep.gamma.g4};
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  for (int part = 0; part < 4; ++part) rep.worst_excess = std::max(rep.worst_excess, rep.worst_ratio[part] - gam[part]);
  rep.holds = rep.worst_excess <= 1e-9;
  return rep;
}

double transfer_expectation(const VertexTensorAssignment& as, double t, double a, double b, std::size_t kappa) {
  check_capacity(as);
  if (kappa < 1) throw ArgumentError("walk length must be >= 1");
  const auto e = half_exponentials(as, t, a, b);
  const std::size_t n = as.graph().n();
  const auto d = static_cast<Eigen::Index>(as.dim());
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  // u_0 = 1/sqrt(n) (x) col(I)
  Blocks u(n, Matrix::Identity(d, d) * inv_sqrt_n);
  for (std::size_t step = 0; step < kappa; ++step) u = apply_transfer(as.graph(), e, u);

  Complex inner = 0;
  for (const auto& blk : u) inner += blk.trace() * inv_sqrt_n;
  if (std::abs(inner.imag()) > 1e-9 * std::max(1.0, std::abs(inner.real()))) {
    throw NumericalError("transfer expectation has imaginary part " + std::to_string(inner.imag()));
  }
  return inner.real();
}

MeanEstimate monte_carlo_trace(const VertexTensorAssignment& as, double t, double a, double b, std::size_t kappa,
                               std::size_t walks, std::uint64_t seed, std::size_t workers) {
  if (walks < 2) throw ArgumentError("Monte Carlo needs at least two walks");
  const auto e = half_exponentials(as, t, a, b);
  std::vector<double> samples(walks);
  parallel_for(walks, workers, [&](std::size_t i) {
    const WalkSample w = sample_walk(as.graph(), kappa, derive_seed(seed, i));
    Matrix p = e[w.vertices[0]];
    for (std::size_t j = 1; j < w.vertices.size(); ++j) p = p * e[w.vertices[j]];
    samples[i] = p.squaredNorm();
  });
  double sum = 0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(walks);
  double ss = 0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double var = ss / static_cast<double>(walks - 1);
  return {mean, std::sqrt(var / static_cast<double>(walks))};
}

bool expectation_bound_applies(double t, double r, double a, double b, double lambda) {
  const double x = t * r * std::hypot(a, b);
  return x < 1 && lambda * (2 * std::exp(x) - 1) <= 1 && lambda < 1;
}

double expectation_bound(const ChernoffParams& params, double t, double a, double b, double lambda) {
  if (!(t >= 0)) throw ArgumentError("t must be >= 0");
  if (!(lambda >= 0 && lambda <= 1)) throw ArgumentError("lambda must lie in [0, 1]");
  if (!expectation_bound_applies(t, params.radius, a, b, lambda)) {
    throw PreconditionError("expectation bound needs t r sqrt(a^2+b^2) < 1 and lambda (2 e^x - 1) <= 1 with lambda < 1");
  }
  const double x = t * params.radius * std::hypot(a, b);
  const double gap = 1 - lambda;
  const double kappa = static_cast<double>(params.kappa);
  return static_cast<double>(params.dim) * std::exp(kappa * (2 * x + 8 / gap + 16 * x / gap));
}

// Gaussian domination --------------------------------------------------------

namespace {

constexpr std::size_t kDominationGrid = 10000;

double log_cosh(double x) {
  x = std::abs(x);
  return x + std::log1p(std::exp(-2 * x)) - std::numbers::ln2;
}

/// log of beta_0(tau) sigma sqrt(2 pi) exp(tau^2 / (2 sigma^2)).
double log_domination_ratio(double tau, double sigma) {
  const double log_beta0 = std::log(std::numbers::pi / 4) - 2 * log_cosh(std::numbers::pi * tau / 2);
  return log_beta0 + std::log(sigma * std::sqrt(2 * std::numbers::pi)) + tau * tau / (2 * sigma * sigma);
}

double grid_point(double window, std::size_t i) {
  return -window + 2 * window * static_cast<double>(i) / static_cast<double>(kDominationGrid - 1);
}

template <class F>
double golden_section_min(F&& f, double lo, double hi, double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 500 && (hi - lo) > rel_tol * std::max(std::abs(lo), std::abs(hi)); ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace

double domination_constant(double window, double sigma) {
  if (!(window > 0) || !(sigma > 0)) throw ArgumentError("window and sigma must be > 0");
  std::size_t best = 0;
  double best_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kDominationGrid; ++i) {
    const double v = log_domination_ratio(grid_point(window, i), sigma);
    if (v > best_log) {
      best_log = v;
      best = i;
    }
  }
  // Off-grid refinement between the neighbors of the best grid point.
  const double lo = grid_point(window, best == 0 ? 0 : best - 1);
  const double hi = grid_point(window, std::min(best + 1, kDominationGrid - 1));
  const double tau = golden_section_min([&](double x) { return -log_domination_ratio(x, sigma); }, lo, hi, 1e-12);
  best_log = std::max(best_log, log_domination_ratio(tau, sigma));
  return std::exp(best_log) * (1 + 1e-9);
}

DominationFit fit_gaussian_domination(double window, const std::vector<double>& sigma_grid) {
  if (!(window > 0)) throw ArgumentError("domination window must be > 0");
  if (sigma_grid.empty()) throw ArgumentError("sigma grid is empty");
  DominationFit fit;
  fit.window = window;
  fit.c = std::numeric_limits<double>::infinity();
  for (double sigma : sigma_grid) {
    const double c = domination_constant(window, sigma);
    if (c < fit.c) {
      fit.c = c;
      fit.sigma = sigma;
    }
  }
  if (!std::isfinite(fit.c)) throw NumericalError("domination constant overflowed on every sigma");
  const double log_c = std::log(fit.c);
  fit.verified = true;
  for (std::size_t i = 0; i < kDominationGrid; ++i)
    if (log_domination_ratio(grid_point(window, i), fit.sigma) > log_c) fit.verified = false;
  return fit;
}

// Tail bounds ----------------------------------------------------------------

namespace {

void require_fit(const DominationFit& fit) {
  if (!fit.verified || !(fit.c > 0) || !(fit.sigma > 0)) throw ArgumentError("domination fit is not verified");
}

double ky_fan_prefactor(const ChernoffParams& p, const DominationFit& fit) {
  const double k = static_cast<double>(p.k);
  return fit.c * (k + std::sqrt((static_cast<double>(p.dim) - k) / k));
}

double walk_constant(const ChernoffParams& p) { return static_cast<double>(p.kappa) + 8 * p.lambda_bar; }

}  // namespace

double theorem_log_objective(const ChernoffParams& p, const PolynomialSpec& poly, const DominationFit& fit, double t) {
  const double K = walk_constant(p);
  const double s = poly.power;
  const double base = 8 * static_cast<double>(p.kappa) * p.lambda_bar;
  std::vector<double> logs;
  const double log_pref = std::log(ky_fan_prefactor(p, fit));
  for (std::size_t l = 1; l < poly.coefficients.size(); ++l) {
    const double a = poly.coefficients[l];
    if (a == 0) continue;
    const double q = K * static_cast<double>(l) * s * p.radius;
    logs.push_back(std::log(a) + log_pref + base + 2 * q * t + 2 * (fit.sigma * q) * (fit.sigma * q) * t * t);
  }
  if (poly.coefficients[0] > 0) logs.push_back(std::log(poly.coefficients[0] * static_cast<double>(p.k)));
  if (logs.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0;
  for (double v : logs) acc += std::exp(v - top);
  return (s - 1) * std::log(static_cast<double>(poly.degree()) + 1) - p.theta * t + top + std::log(acc);
}

TailBound theorem_bound(const ChernoffParams& p, const PolynomialSpec& poly, const DominationFit& fit,
                        const TSearch& search) {
  p.validate();
  poly.validate();
  require_fit(fit);
  if (search.grid_points < 3) throw ArgumentError("t grid needs at least 3 points");

  // Automatic bracket from the per-term vertices of the quadratic exponents.
  const double K = walk_constant(p);
  double vertex = 0;
  for (std::size_t l = 1; l < poly.coefficients.size(); ++l) {
    if (poly.coefficients[l] == 0) continue;
    const double q = K * static_cast<double>(l) * poly.power * p.radius;
    if (q == 0) {
      vertex = std::max(vertex, 50 / p.theta);
      continue;
    }
    vertex = std::max(vertex, (p.theta - 2 * q) / (4 * fit.sigma * fit.sigma * q * q));
  }
  const double hi = search.t_max.value_or(vertex > 0 ? 4 * vertex : 1e-3);
  const double lo = search.t_min.value_or(hi * 1e-6);
  if (!(lo > 0) || !(hi > lo)) throw ArgumentError("empty t bracket");

  auto objective = [&](double t) { return theorem_log_objective(p, poly, fit, t); };
  std::vector<double> grid(search.grid_points);
  const double ratio = std::log(hi / lo) / static_cast<double>(grid.size() - 1);
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = i + 1 == grid.size() ? hi : lo * std::exp(ratio * static_cast<double>(i));
    const double v = objective(grid[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  double t = golden_section_min(objective, a, b, 1e-8);
  double v = objective(t);
  if (best_val < v) {
    t = grid[best];
    v = best_val;
  }
  return {std::exp(v), v, t, v >= 0};
}

double corollary_t(const ChernoffParams& p, const DominationFit& fit) {
  const double K = walk_constant(p);
  const double r = p.radius;
  if (!(r > 0)) throw PreconditionError("closed-form t needs r > 0");
  return (p.theta - 2 * K * r) / (4 * fit.sigma * fit.sigma * r * r * K * K);
}

TailBound corollary_bound(const ChernoffParams& p, const DominationFit& fit) {
  p.validate();
  require_fit(fit);
  const double t = corollary_t(p, fit);
  if (!(t > 0)) throw PreconditionError("threshold too small: closed-form t is not positive");
  const double K = walk_constant(p);
  const double gap = p.theta - 2 * K * p.radius;
  const double sr = fit.sigma * p.radius * K;
  const double log_v = std::log(ky_fan_prefactor(p, fit)) + 8 * static_cast<double>(p.kappa) * p.lambda_bar -
                       gap * gap / (8 * sr * sr);
  return {std::exp(log_v), log_v, t, log_v >= 0};
}

// Monte Carlo tail -----------------------------------------------------------

std::vector<TailEstimate> empirical_tail(const VertexTensorAssignment& as, const PolynomialSpec& poly, std::size_t k,
                                         const std::vector<double>& thetas, const std::vector<double>& check_ts,
                                         std::size_t walks, std::size_t kappa, std::uint64_t seed,
                                         std::size_t workers) {
  poly.validate();
  if (walks < 1) throw ArgumentError("need at least one walk");
  if (thetas.size() != check_ts.size()) throw ArgumentError("one check t per threshold required");
  if (k < 1 || k > as.dim()) throw ArgumentError("Ky Fan index out of range");
  const std::size_t m = thetas.size();

  std::vector<double> norms(walks);
  std::vector<char> violated(walks * m, 0);
  parallel_for(walks, workers, [&](std::size_t i) {
    const WalkSample w = sample_walk(as.graph(), kappa, derive_seed(seed, i));
    Matrix sum = as.tensors()[w.vertices[0]].unfolding();
    for (std::size_t j = 1; j < w.vertices.size(); ++j) sum += as.tensors()[w.vertices[j]].unfolding();
    const Spectrum spec = hermitian_eig(hermitian_from_trusted(Tensor(as.shape(), std::move(sum))));

    std::vector<double> mapped;
    mapped.reserve(static_cast<std::size_t>(spec.eigenvalues.size()));
    for (Eigen::Index q = 0; q < spec.eigenvalues.size(); ++q) mapped.push_back(std::abs(poly(spec.eigenvalues(q))));
    std::sort(mapped.begin(), mapped.end(), std::greater<>());
    norms[i] = gauge_rho(std::span<const double>(mapped), k);

    // f(exp(tS)) and exp(t f(S)) share S's eigenbasis, so their difference
    // is PSD iff the scalar inequality holds at every eigenvalue of S.
    for (std::size_t c = 0; c < m; ++c) {
      const double t = check_ts[c];
      for (Eigen::Index q = 0; q < spec.eigenvalues.size(); ++q) {
        const double x = spec.eigenvalues(q);
        const double lhs = poly(std::exp(t * x));
        const double rhs = std::exp(t * poly(x));
        if (lhs < rhs - 1e-9 * (1 + std::abs(rhs))) {
          violated[i * m + c] = 1;
          break;
        }
      }
    }
  });

  std::vector<TailEstimate> out(m);
  const double nw = static_cast<double>(walks);
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t hits = 0, bad = 0;
    for (std::size_t i = 0; i < walks; ++i) {
      if (norms[i] >= thetas[c]) ++hits;
      bad += static_cast<std::size_t>(violated[i * m + c]);
    }
    const double p = static_cast<double>(hits) / nw;
    out[c] = {thetas[c], p, std::sqrt(p * (1 - p) / nw), bad};
  }
  return out;
}

}  // namespace tec
