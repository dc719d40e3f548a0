#include "tec/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tec/errors.hpp"

namespace tec {

double beta0_density(double t) {
  // cosh(pi t) + 1 = 2 cosh^2(pi t / 2)
  const double c = std::cosh(std::numbers::pi * t / 2);
  return std::numbers::pi / (4 * c * c);
}

double beta_density(double theta, double t) {
  if (!(theta > 0 && theta <= 1)) throw ArgumentError("beta_theta needs theta in (0, 1]");
  if (theta == 1) return t == 0 ? std::numeric_limits<double>::infinity() : 0.0;
  const double pi = std::numbers::pi;
  return std::sin(pi * theta) / (2 * theta * (std::cosh(pi * t) + std::cos(pi * theta)));
}

double beta0_antiderivative(double t) { return 0.5 * std::tanh(std::numbers::pi * t / 2); }

double beta0_mass(double truncation) { return std::tanh(std::numbers::pi * truncation / 2); }

double beta0_tail(double truncation) {
  // 1 - tanh(x) = 2 / (exp(2x) + 1)
  return 2 / (std::exp(std::numbers::pi * truncation) + 1);
}

void QuadratureSpec::validate() const {
  if (!(truncation > 0) || !std::isfinite(truncation)) throw ArgumentError("quadrature truncation T must be > 0");
  if (node_count < 16) throw ArgumentError("quadrature needs at least 16 nodes");
  if (!(tolerance > 0)) throw ArgumentError("quadrature tolerance must be > 0");
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double sum = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw ArgumentError("Gauss-Legendre needs n >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = (a + b) / 2, half = (b - a) / 2;
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (std::size_t j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1, p1 = x;
    for (std::size_t j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1);
    const double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule make_rule(const QuadratureSpec& spec) {
  spec.validate();
  return gauss_legendre(spec.node_count, -spec.truncation, spec.truncation);
}

}  // namespace tec
