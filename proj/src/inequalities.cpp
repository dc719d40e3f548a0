#include "tec/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "tec/errors.hpp"
#include "tec/majorization.hpp"
#include "tec/norms.hpp"
#include "tec/parallel.hpp"

namespace tec {

// DiscreteMeasure ------------------------------------------------------------

DiscreteMeasure::DiscreteMeasure(std::vector<HermitianTensor> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw ArgumentError("discrete measure needs at least one atom");
  if (atoms_.size() != weights_.size()) throw ArgumentError("one weight per atom required");
  double total = 0;
  for (double w : weights_) {
    if (!(w > 0)) throw ArgumentError("measure weights must be positive");
    total += w;
  }
  if (std::abs(total - 1) > 1e-12) throw ArgumentError("measure weights must sum to 1");
  for (const auto& a : atoms_)
    if (!(a.shape() == atoms_.front().shape())) throw ShapeError("measure atoms must share one shape");
}

const char* to_string(AverageMode mode) {
  switch (mode) {
    case AverageMode::weak: return "weak";
    case AverageMode::strong: return "strong";
    case AverageMode::weak_log: return "weak_log";
    case AverageMode::log: return "log";
  }
  return "?";
}

// Averaged majorization ------------------------------------------------------

namespace {

bool is_log_mode(AverageMode m) { return m == AverageMode::weak_log || m == AverageMode::log; }

double ky_fan_of_map(const Spectrum& s, const RealFunction& f, std::size_t k) {
  return ky_fan_norm(spectral_map(s, f).tensor(), k);
}

bool within(double lhs, double rhs) { return lhs <= rhs + 1e-9 * (1 + std::abs(rhs)); }

}  // namespace

AverageReport verify_discrete_average_majorization(const HermitianTensor& c, const DiscreteMeasure& d,
                                                   const RealFunction& f, std::size_t k, AverageMode mode) {
  if (!(c.shape() == d.atoms().front().shape())) throw ShapeError("C and the measure atoms must share one shape");
  const bool log_mode = is_log_mode(mode);

  const Spectrum c_spec = hermitian_eig(c);
  std::vector<Spectrum> d_specs;
  d_specs.reserve(d.size());
  for (const auto& atom : d.atoms()) d_specs.push_back(hermitian_eig(atom));

  const Eigen::Index n = c_spec.eigenvalues.size();
  if (log_mode) {
    if (c_spec.eigenvalues.minCoeff() <= 0) throw DomainError("log modes need a positive C");
    for (const auto& s : d_specs)
      if (s.eigenvalues.minCoeff() <= 0) throw DomainError("log modes need positive measure atoms");
  }

  // Averaged spectrum: arithmetic for weak/strong, geometric for log modes.
  RealVector avg = RealVector::Zero(n);
  for (std::size_t t = 0; t < d.size(); ++t) {
    const RealVector& lam = d_specs[t].eigenvalues;
    avg += d.weights()[t] * (log_mode ? RealVector(lam.array().log()) : lam);
  }
  if (log_mode) avg = avg.array().exp();

  const SortedVec x = SortedVec::from(c_spec.eigenvalues);
  const SortedVec y = SortedVec::from(avg);

  AverageReport r;
  switch (mode) {
    case AverageMode::weak: r.premise_holds = weak_majorizes(y, x).holds; break;
    case AverageMode::strong: r.premise_holds = majorizes(y, x).holds; break;
    case AverageMode::weak_log: r.premise_holds = weak_log_majorizes(y, x).holds; break;
    case AverageMode::log: r.premise_holds = log_majorizes(y, x).holds; break;
  }

  r.lhs = ky_fan_of_map(c_spec, f, k);
  double log_acc = 0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    const double v = ky_fan_of_map(d_specs[t], f, k);
    r.rhs_linear += d.weights()[t] * v;
    if (log_mode) {
      if (!(v > 0)) throw DomainError("log form needs ||f(D)||_(k) > 0");
      log_acc += d.weights()[t] * std::log(v);
    }
  }
  r.conclusion_holds = within(r.lhs, r.rhs_linear);
  if (log_mode) {
    r.rhs_log = std::exp(log_acc);
    r.conclusion_holds = r.conclusion_holds && within(r.lhs, r.rhs_log);
  }
  return r;
}

// Multivariate norm inequality ----------------------------------------------

double golden_thompson_lhs(const RealFunction& f, std::span<const HermitianTensor> cs, std::size_t k) {
  if (cs.empty()) throw ArgumentError("need at least one tensor");
  HermitianTensor log_sum = tensor_log(cs[0]);
  for (std::size_t i = 1; i < cs.size(); ++i) log_sum = log_sum + tensor_log(cs[i]);
  return ky_fan_norm(spectral_map(tensor_exp(log_sum), f).tensor(), k);
}

double interpolation_integrand(const RealFunction& f, std::span<const Spectrum> spectra, std::size_t k, double t) {
  const Complex z(1.0, t);
  Matrix product = complex_power(spectra[0], z).unfolding();
  for (std::size_t i = 1; i < spectra.size(); ++i) product = product * complex_power(spectra[i], z).unfolding();
  // The eigenvalues of f(|P|) are f applied to the singular values of P.
  const RealVector s = singular_values(Tensor(spectra[0].shape, std::move(product)));
  std::vector<double> mapped(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double v = f(s(i));
    if (!std::isfinite(v)) throw DomainError("f is not finite at singular value " + std::to_string(s(i)));
    mapped[static_cast<std::size_t>(i)] = std::abs(v);
  }
  std::sort(mapped.begin(), mapped.end(), std::greater<>());
  return gauge_rho(std::span<const double>(mapped), k);
}

namespace {

enum class Form { linear, log };

std::vector<Spectrum> positive_spectra(std::span<const HermitianTensor> cs) {
  if (cs.empty()) throw ArgumentError("need at least one tensor");
  std::vector<Spectrum> out;
  out.reserve(cs.size());
  for (const auto& c : cs) {
    if (!(c.shape() == cs[0].shape())) throw ShapeError("tensors must share one shape");
    out.push_back(hermitian_eig(c));
    if (!(out.back().eigenvalues.minCoeff() > 0)) throw DomainError("interpolation needs positive tensors");
  }
  return out;
}

double integrate_nodes(const QuadratureRule& rule, Form form, const RealFunction& f, std::span<const Spectrum> spectra,
                       std::size_t k, std::size_t workers) {
  std::vector<double> values(rule.nodes.size());
  parallel_for(rule.nodes.size(), workers, [&](std::size_t i) {
    const double h = interpolation_integrand(f, spectra, k, rule.nodes[i]);
    if (form == Form::log && !(h > 0)) throw DomainError("log form needs a positive integrand");
    values[i] = form == Form::log ? std::log(h) : h;
  });
  // Fixed-order reduction.
  double sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += rule.weights[i] * beta0_density(rule.nodes[i]) * values[i];
  return sum;
}

InterpolationValue evaluate_rhs(Form form, const RealFunction& f, std::span<const HermitianTensor> cs, std::size_t k,
                                const QuadratureSpec& quad, std::size_t workers) {
  quad.validate();
  const auto spectra = positive_spectra(cs);
  const std::size_t n = spectra[0].eigenvalues.size();
  if (k < 1 || k > n) throw ArgumentError("Ky Fan index out of range");

  const QuadratureRule fine = make_rule(quad);
  const QuadratureRule coarse = gauss_legendre(quad.node_count / 2, -quad.truncation, quad.truncation);
  const double q_fine = integrate_nodes(fine, form, f, spectra, k, workers);
  const double q_coarse = integrate_nodes(coarse, form, f, spectra, k, workers);

  // Singular values of prod C_i^{1+it} lie in [prod lambda_min, prod lambda_max].
  double lo = 1, hi = 1;
  for (const auto& s : spectra) {
    lo *= s.eigenvalues.minCoeff();
    hi *= s.eigenvalues.maxCoeff();
  }
  double f_min = std::numeric_limits<double>::infinity(), f_max = 0;
  constexpr int kSamples = 1024;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = lo + (hi - lo) * i / kSamples;
    const double v = std::abs(f(x));
    f_min = std::min(f_min, v);
    f_max = std::max(f_max, v);
  }
  const double kd = static_cast<double>(k);
  const double tail = beta0_tail(quad.truncation);

  InterpolationValue out;
  out.truncation = quad.truncation;
  out.node_count = quad.node_count;
  if (form == Form::linear) {
    out.value = q_fine;
    out.quadrature_error = std::abs(q_fine - q_coarse) + 1e-12 * std::abs(q_fine);
    out.truncation_bound = kd * f_max * tail;
  } else {
    out.value = std::exp(q_fine);
    out.quadrature_error = std::abs(out.value - std::exp(q_coarse)) + 1e-12 * out.value;
    const double m = f_min > 0 ? std::max(std::abs(std::log(kd * f_min)), std::abs(std::log(kd * f_max)))
                               : std::numeric_limits<double>::infinity();
    out.truncation_bound = out.value * std::expm1(m * tail);
  }
  const double budget = quad.tolerance * std::max(1.0, std::abs(out.value));
  if (!(out.truncation_bound + out.quadrature_error <= budget)) {
    throw QuadratureError("estimated truncation + quadrature error " +
                          std::to_string(out.truncation_bound + out.quadrature_error) + " exceeds tolerance " +
                          std::to_string(budget));
  }
  return out;
}

}  // namespace

InterpolationValue golden_thompson_rhs_log(const RealFunction& f, std::span<const HermitianTensor> cs, std::size_t k,
                                           const QuadratureSpec& quad, std::size_t workers) {
  return evaluate_rhs(Form::log, f, cs, k, quad, workers);
}

InterpolationValue golden_thompson_rhs_linear(const RealFunction& g, std::span<const HermitianTensor> cs,
                                              std::size_t k, const QuadratureSpec& quad, std::size_t workers) {
  return evaluate_rhs(Form::linear, g, cs, k, quad, workers);
}

// Lie-Trotter ----------------------------------------------------------------

double lie_trotter_error(std::span<const HermitianTensor> ls, std::size_t n) {
  if (ls.empty()) throw ArgumentError("need at least one tensor");
  if (n < 1) throw ArgumentError("Lie-Trotter step count must be >= 1");
  const double inv_n = 1.0 / static_cast<double>(n);

  Matrix step = tensor_exp(ls[0] * inv_n).unfolding();
  HermitianTensor sum = ls[0];
  for (std::size_t i = 1; i < ls.size(); ++i) {
    step = step * tensor_exp(ls[i] * inv_n).unfolding();
    sum = sum + ls[i];
  }
  // step^n by repeated squaring
  Matrix power = Matrix::Identity(step.rows(), step.cols());
  Matrix base = step;
  for (std::size_t e = n; e > 0; e >>= 1) {
    if (e & 1) power = power * base;
    if (e > 1) base = base * base;
  }
  const Matrix diff = power - tensor_exp(sum).unfolding();
  return spectral_norm(Tensor(sum.shape(), diff));
}

double lie_trotter_bound(const HermitianTensor& l1, const HermitianTensor& l2, std::size_t n) {
  if (n < 1) throw ArgumentError("Lie-Trotter step count must be >= 1");
  return 2 * std::exp(2 * spectral_norm(l1.tensor()) + 2 * spectral_norm(l2.tensor())) / static_cast<double>(n);
}

// Convexity helpers ----------------------------------------------------------

namespace {

ConvexityCheck second_differences(const std::function<double(double)>& y, double x_lo, double x_hi,
                                  std::size_t samples) {
  if (samples < 3 || !(x_hi > x_lo)) throw ArgumentError("convexity check needs >= 3 samples on a proper interval");
  std::vector<double> v(samples);
  for (std::size_t i = 0; i < samples; ++i) v[i] = y(x_lo + (x_hi - x_lo) * i / static_cast<double>(samples - 1));
  ConvexityCheck c;
  for (std::size_t i = 1; i + 1 < samples; ++i) {
    const double d2 = v[i - 1] - 2 * v[i] + v[i + 1];
    const double scale = 1 + std::abs(v[i - 1]) + std::abs(v[i]) + std::abs(v[i + 1]);
    const double scaled = d2 / scale;
    c.worst_second_difference = std::min(c.worst_second_difference, scaled);
    if (!(scaled >= -1e-10)) c.convex = false;
  }
  return c;
}

}  // namespace

ConvexityCheck check_log_convexity(const RealFunction& f, double x_lo, double x_hi, std::size_t samples) {
  return second_differences([&](double x) { return std::log(f(std::exp(x))); }, x_lo, x_hi, samples);
}

ConvexityCheck check_exp_convexity(const RealFunction& g, double x_lo, double x_hi, std::size_t samples) {
  return second_differences([&](double x) { return g(std::exp(x)); }, x_lo, x_hi, samples);
}

}  // namespace tec
