#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "tec/graph.hpp"
#include "tec/tensor.hpp"

namespace tec {

/// One Hermitian tensor per vertex, all of one square shape.
class VertexTensorAssignment {
 public:
  VertexTensorAssignment(RegularGraph graph, std::vector<HermitianTensor> tensors);

  const RegularGraph& graph() const { return graph_; }
  const std::vector<HermitianTensor>& tensors() const { return tensors_; }
  const TensorShape& shape() const { return tensors_.front().shape(); }
  /// Product of the row dimensions; the unfolding is dim x dim.
  std::size_t dim() const { return shape().unfold_rows(); }
  /// max_v ||g(v)||, recomputed from the tensors.
  double radius() const { return radius_; }

 private:
  RegularGraph graph_;
  std::vector<HermitianTensor> tensors_;
  double radius_ = 0;
};

/// Random Hermitian tensors of spectral norm exactly `radius`; real
/// symmetric when `real` is set.
VertexTensorAssignment random_assignment(RegularGraph graph, std::vector<std::size_t> dims, double radius,
                                         std::uint64_t seed, bool real = false);

/// Manifest lines "<vertex> <tensor file>", paths relative to the manifest.
VertexTensorAssignment load_assignment(RegularGraph graph, const std::filesystem::path& manifest);

/// f(x) = (a_0 + a_1 x + ... + a_n x^n)^s with a_l >= 0, s >= 1.
struct PolynomialSpec {
  std::vector<double> coefficients{0.0, 1.0};
  double power = 1.0;

  void validate() const;
  std::size_t degree() const { return coefficients.size() - 1; }
  bool is_identity() const;
  /// Throws DomainError for a negative base with non-integer power.
  double operator()(double x) const;
};

/// beta_0(tau) <= C exp(-tau^2 / (2 sigma^2)) / (sigma sqrt(2 pi)) on |tau| <= window.
struct DominationFit {
  double c = 0;
  double sigma = 0;
  double window = 0;
  bool verified = false;
};

struct ChernoffParams {
  std::size_t kappa = 8;
  std::size_t k = 1;
  double theta = 1;
  double lambda_bar = 1;  // 1 - lambda
  std::size_t dim = 1;
  double radius = 1;

  void validate() const;
};

struct GammaBounds {
  double g1 = 0, g2 = 0, g3 = 0, g4 = 0;
};

/// Contraction constants for the parallel/perpendicular split.
GammaBounds gamma_bounds(double t, double r, double a, double b, double lambda);

/// Cap on n * dim^2 for the transfer operator.
inline constexpr std::size_t kTransferCapacity = 4096;

struct CertificateReport {
  GammaBounds gamma;
  double lambda = 0;
  std::size_t vectors = 0;
  double worst_ratio[4] = {0, 0, 0, 0};
  /// max_i (worst_ratio[i] - gamma_i); the certificate holds when <= 1e-9.
  double worst_excess = 0;
  bool holds = false;
};

/// Applies the transfer operator to random test vectors and records the
/// worst observed ratio for each of the four parallel/perpendicular parts.
CertificateReport contraction_certificate(const VertexTensorAssignment& assignment, double t, double a, double b,
                                          std::size_t vectors = 100, std::uint64_t seed = 0);

/// Exact E ||E_{v_1} ... E_{v_kappa}||_F^2 over the stationary walk, with
/// E_v = exp(t g(v) (a + ib) / 2), by kappa applications of the transfer
/// operator to u_0.
double transfer_expectation(const VertexTensorAssignment& assignment, double t, double a, double b,
                            std::size_t kappa);

struct MeanEstimate {
  double mean = 0;
  double std_error = 0;
};

/// Monte Carlo average of Tr(P P^H), P = E_{v_1} ... E_{v_kappa}, over
/// independent stationary walks.
MeanEstimate monte_carlo_trace(const VertexTensorAssignment& assignment, double t, double a, double b,
                               std::size_t kappa, std::size_t walks, std::uint64_t seed, std::size_t workers = 1);

/// dim * exp(kappa (2x + 8/(1-lambda) + 16x/(1-lambda))), x = t r sqrt(a^2+b^2).
/// Requires x < 1 and lambda (2e^x - 1) <= 1, else PreconditionError.
double expectation_bound(const ChernoffParams& params, double t, double a, double b, double lambda);
/// True when expectation_bound would not raise.
bool expectation_bound_applies(double t, double r, double a, double b, double lambda);

/// Smallest C over `sigma_grid`, verified on a 10^4-point grid.
DominationFit fit_gaussian_domination(double window, const std::vector<double>& sigma_grid);
/// max over the check grid of beta_0(tau) sigma sqrt(2 pi) exp(tau^2 / 2 sigma^2).
double domination_constant(double window, double sigma);

/// Bracket for the minimization over t; empty fields mean "automatic".
struct TSearch {
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::size_t grid_points = 200;
};

struct TailBound {
  double value = 0;
  double log_value = 0;
  double t = 0;
  bool vacuous = false;  // value >= 1
};

/// log of the bracketed objective at t.
double theorem_log_objective(const ChernoffParams& params, const PolynomialSpec& poly, const DominationFit& fit,
                             double t);
/// Minimum over t of the tail bound for ||f(sum_j g(v_j))||_(k) >= theta.
TailBound theorem_bound(const ChernoffParams& params, const PolynomialSpec& poly, const DominationFit& fit,
                        const TSearch& search = {});

/// Closed-form t of the identity-polynomial case; may be <= 0.
double corollary_t(const ChernoffParams& params, const DominationFit& fit);
/// Identity-polynomial bound at corollary_t; PreconditionError when t <= 0.
TailBound corollary_bound(const ChernoffParams& params, const DominationFit& fit);

struct TailEstimate {
  double theta = 0;
  double p_hat = 0;
  double std_error = 0;
  std::size_t assumption3_violations = 0;
};

/// Monte Carlo tail of ||f(sum_j g(v_j))||_(k) at each threshold. For
/// every walk the operator inequality f(exp(tS)) >= exp(t f(S)) is tested
/// at check_ts[i] (the t the bound uses for thetas[i]); failures are counted.
std::vector<TailEstimate> empirical_tail(const VertexTensorAssignment& assignment, const PolynomialSpec& poly,
                                         std::size_t k, const std::vector<double>& thetas,
                                         const std::vector<double>& check_ts, std::size_t walks, std::size_t kappa,
                                         std::uint64_t seed, std::size_t workers = 1);

}  // namespace tec
