#include "tec/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "tec/antisym.hpp"
#include "tec/errors.hpp"
#include "tec/majorization.hpp"
#include "tec/norms.hpp"
#include "tec/parallel.hpp"
#include "tec/quadrature.hpp"
#include "tec/random_tensors.hpp"
#include "tec/tensor_io.hpp"

namespace tec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Records = std::vector<CheckRecord>;

/// Stream for trial `i` of check family `family`.
Rng trial_rng(std::uint64_t seed, std::uint64_t family, std::size_t i) {
  return make_rng(derive_seed(seed, family), i);
}

CheckRecord failed(std::string name, const std::string& why) {
  CheckRecord c = make_check(std::move(name), kInf, 0);
  c.reason = why;
  return c;
}

/// Runs `body`; capacity and precondition errors become skipped records,
/// anything else a failed one.
template <class F>
void guarded(Records& out, const std::string& name, F&& body) {
  try {
    body();
  } catch (const CapacityError& e) {
    out.push_back(make_skip(name, std::string("capacity: ") + e.what()));
  } catch (const PreconditionError& e) {
    out.push_back(make_skip(name, std::string("precondition: ") + e.what()));
  } catch (const Error& e) {
    out.push_back(failed(name, e.what()));
  }
}

double rel(const Matrix& a, const Matrix& b, double scale) {
  return (a - b).norm() / std::max(scale, std::numeric_limits<double>::min());
}

std::string dims_label(const std::vector<std::size_t>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "x" : "") + std::to_string(dims[i]);
  return s;
}

/// Reduces per-trial maxima in index order.
template <std::size_t N>
std::array<double, N> column_max(const std::vector<std::array<double, N>>& rows) {
  std::array<double, N> m;
  m.fill(0.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < N; ++j) m[j] = std::max(m[j], r[j]);
  return m;
}

// tensor_props ---------------------------------------------------------------

void algebra_checks(const ExperimentConfig& cfg, std::size_t workers, Records& out) {
  static constexpr std::array<const char*, 10> kNames = {
      "algebra.associativity",  "algebra.adjoint_of_product", "algebra.trace_cyclic",   "algebra.inner_product",
      "algebra.kronecker_mixed_product", "algebra.col_trace_identity", "algebra.frobenius", "algebra.identity_law",
      "spectral.reconstruction", "spectral.trace_eigensum"};
  std::vector<std::array<double, 10>> errs(cfg.tensor_props.algebra_trials);
  parallel_for(errs.size(), workers, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 101, i);
    auto dims = [&] {
      std::vector<std::size_t> d(uniform_index(rng, 1, 2));
      for (auto& x : d) x = uniform_index(rng, 1, 3);
      return d;
    };
    const auto a = dims(), b = dims(), c = dims();
    const Tensor x = random_tensor(rng, {a, b}), y = random_tensor(rng, {b, c}), z = random_tensor(rng, {c, a});
    const Tensor w = random_tensor(rng, {b, a}), x2 = random_tensor(rng, {a, b});
    const double nx = frobenius_norm(x), ny = frobenius_norm(y), nz = frobenius_norm(z);
    auto& e = errs[i];

    e[0] = rel(einstein_product(einstein_product(x, y), z).unfolding(),
               einstein_product(x, einstein_product(y, z)).unfolding(), nx * ny * nz);
    e[1] = rel(conj_transpose(einstein_product(x, y)).unfolding(),
               einstein_product(conj_transpose(y), conj_transpose(x)).unfolding(), nx * ny);
    e[2] = std::abs(trace(einstein_product(x, w)) - trace(einstein_product(w, x))) / (nx * frobenius_norm(w));
    {
      const auto ex = x.entries(), ey = x2.entries();
      Complex s = 0;
      for (std::size_t q = 0; q < ex.size(); ++q) s += std::conj(ex[q]) * ey[q];
      e[3] = std::abs(inner_product(x, x2) - s) / (nx * frobenius_norm(x2));
    }
    {
      const Tensor p = x, q = z, r = y, s = x2;  // (A,B) (C,A) (B,C) (A,B)
      const Tensor lhs = einstein_product(kronecker(p, q), kronecker(r, s));
      const Tensor rhs = kronecker(einstein_product(p, r), einstein_product(q, s));
      e[4] = rel(lhs.unfolding(), rhs.unfolding(), nx * nz * ny * frobenius_norm(x2));
    }
    {
      const TensorShape sq = TensorShape::square(a);
      const Tensor cc = random_tensor(rng, sq), bb = random_tensor(rng, sq);
      const Tensor col_i = column(make_identity(sq).tensor());
      const Complex lhs = inner_product(col_i, einstein_product(kronecker(cc, bb), col_i));
      const Tensor bt(sq, bb.unfolding().transpose());
      e[5] = std::abs(lhs - trace(einstein_product(cc, bt))) / (frobenius_norm(cc) * frobenius_norm(bb));
    }
    e[6] = std::abs(nx * nx - inner_product(x, x).real()) / (nx * nx);
    e[7] = rel(einstein_product(make_identity(TensorShape::square(b)).tensor(), y).unfolding(), y.unfolding(), ny);
    {
      const HermitianTensor h = random_hermitian(rng, TensorShape::square(a), uniform(rng, 0.5, 4));
      const Spectrum s = hermitian_eig(h);
      const double nh = frobenius_norm(h.tensor());
      e[8] = rel(s.reconstruct().unfolding(), h.unfolding(), nh);
      e[9] = std::abs(trace(h.tensor()).real() - s.eigenvalues.sum()) / nh;
    }
  });
  const auto worst = column_max(errs);
  for (std::size_t j = 0; j < kNames.size(); ++j) out.push_back(make_check(kNames[j], worst[j], 1e-10));
}

void compound_checks(const ExperimentConfig& cfg, std::size_t workers, Records& out) {
  std::vector<std::array<double, 6>> errs(cfg.tensor_props.compound_trials);
  parallel_for(errs.size(), workers, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 102, i);
    const std::size_t n = uniform_index(rng, 2, kCompoundMaxN);
    const std::size_t k = uniform_index(rng, 1, std::min<std::size_t>(n, 4));
    const TensorShape shape = TensorShape::square({n});
    const Tensor x = random_tensor(rng, shape), y = random_tensor(rng, shape);
    const HermitianTensor c = random_positive(rng, shape, 0.5, 2.0);
    const CompoundRep cx = compound(x, k), cy = compound(y, k);
    const double nx = cx.matrix().norm();
    auto& e = errs[i];

    e[0] = rel(compound(conj_transpose(x), k).matrix(), cx.matrix().adjoint(), nx);
    e[1] = rel(cx.matrix() * cy.matrix(), compound(einstein_product(x, y), k).matrix(), nx * cy.matrix().norm());
    e[2] = rel(compound(abs_tensor(x).tensor(), k).matrix(), abs_tensor(cx.as_tensor()).unfolding(), nx);

    const double p = std::array{0.5, 2.0, 3.0}[uniform_index(rng, 0, 2)];
    const auto pw = [p](double v) { return std::pow(v, p); };
    const HermitianTensor cc(compound(c.tensor(), k).as_tensor());
    const Matrix lhs5 = compound(spectral_map(c, pw).tensor(), k).matrix();
    e[3] = rel(lhs5, spectral_map(cc, pw).unfolding(), lhs5.norm());

    const Complex it(0, uniform(rng, -2, 2));
    const Matrix lhs6 = compound(complex_power(c, it), k).matrix();
    e[4] = rel(lhs6, complex_power(cc, it).unfolding(), lhs6.norm());

    e[5] = compound_norm_check(x, k).rel_error;
  });
  const auto worst = column_max(errs);
  const std::array<const char*, 6> names = {"compound.adjoint",   "compound.multiplicative",
                                            "compound.abs",       "compound.real_power",
                                            "compound.imaginary_power", "compound.norm_product"};
  for (std::size_t j = 0; j < names.size(); ++j) out.push_back(make_check(names[j], worst[j], 1e-8));
}

/// Least-squares slope of log(err) against log(n).
double loglog_slope(const std::vector<double>& ns, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::log(ns[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void lie_trotter_checks(const ExperimentConfig& cfg, std::size_t workers, Records& out) {
  std::vector<std::array<double, 3>> res(cfg.tensor_props.lie_trotter_pairs);
  parallel_for(res.size(), workers, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 103, i);
    const TensorShape shape = TensorShape::square({3});
    const HermitianTensor l1 = random_hermitian(rng, shape, uniform(rng, 0.5, 1.0));
    const HermitianTensor l2 = random_hermitian(rng, shape, uniform(rng, 0.5, 1.0));
    const std::array<HermitianTensor, 2> pair{l1, l2};
    std::vector<double> ns, errs;
    double worst_ratio = 0;
    for (std::size_t j = 0; j <= 8; ++j) {
      const std::size_t n = std::size_t{1} << j;
      const double err = lie_trotter_error(pair, n);
      ns.push_back(static_cast<double>(n));
      errs.push_back(err);
      worst_ratio = std::max(worst_ratio, err / lie_trotter_bound(l1, l2, n));
    }
    // Commuting pair: shared eigenbasis.
    const Matrix u = random_unitary(rng, 3);
    auto draw = [&] {
      RealVector v(3);
      for (auto& x : v) x = uniform(rng, -1, 1);
      return v;
    };
    const std::array<HermitianTensor, 2> commuting{with_eigenvalues(u, shape, draw()),
                                                   with_eigenvalues(u, shape, draw())};
    double commuting_err = 0;
    for (std::size_t j = 0; j <= 8; ++j) commuting_err = std::max(commuting_err, lie_trotter_error(commuting, 1u << j));
    res[i] = {loglog_slope(ns, errs), worst_ratio, commuting_err};
  });
  double slope = -kInf;
  double ratio = 0, comm = 0;
  for (const auto& r : res) {
    slope = std::max(slope, r[0]);
    ratio = std::max(ratio, r[1]);
    comm = std::max(comm, r[2]);
  }
  out.push_back(make_check("lie_trotter.loglog_slope", slope, -0.9));
  out.push_back(make_check("lie_trotter.proof_bound_ratio", ratio, 1.0));
  out.push_back(make_check("lie_trotter.commuting", comm, 1e-10));
}

void beta_checks(Records& out) {
  const QuadratureSpec spec;  // T = 6, 256 nodes
  const double mass = make_rule(spec).integrate(beta0_density);
  out.push_back(make_check("beta0.mass", std::abs(mass - std::tanh(3 * std::numbers::pi)), 1e-8));
  out.push_back(make_check("beta0.antiderivative",
                           std::abs(mass - (beta0_antiderivative(6) - beta0_antiderivative(-6))), 1e-8));
  double worst = 0;
  for (int i = -40; i <= 40; ++i) {
    const double t = 0.1 * i;
    worst = std::max(worst, std::abs(beta_density(1e-4, t) - beta0_density(t)));
  }
  out.push_back(make_check("beta.theta_to_zero_limit", worst, 1e-6));
}

Records tensor_props_suite(const ExperimentConfig& cfg, std::size_t workers) {
  Records out;
  guarded(out, "algebra", [&] { algebra_checks(cfg, workers, out); });
  guarded(out, "compound", [&] { compound_checks(cfg, workers, out); });
  guarded(out, "lie_trotter", [&] { lie_trotter_checks(cfg, workers, out); });
  guarded(out, "beta0", [&] { beta_checks(out); });
  return out;
}

// inequalities ---------------------------------------------------------------

struct NamedFunction {
  const char* name;
  RealFunction f;
};

const std::array<NamedFunction, 3>& interpolation_functions() {
  static const std::array<NamedFunction, 3> fs = {
      NamedFunction{"x", [](double x) { return x; }},
      NamedFunction{"x2", [](double x) { return x * x; }},
      NamedFunction{"exp", [](double x) { return std::exp(x); }},
  };
  return fs;
}

void interpolation_checks(const ExperimentConfig& cfg, std::size_t workers, Records& out) {
  const auto& fs = interpolation_functions();
  // Per trial and function: normalized excess for log / linear form, and
  // the commuting-case gap in units of the error budget.
  struct Row {
    std::array<double, 3> log_excess{}, lin_excess{}, log_gap{}, lin_gap{};
    std::string error;
  };
  std::vector<Row> rows(cfg.inequalities.interpolation_trials);
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 201, i);
    try {
      const TensorShape shape = pick_shape(rng, {{2}, {3}, {4}, {2, 2}});
      const std::size_t m = uniform_index(rng, 1, 3);
      const std::size_t n = shape.unfold_rows();
      const std::size_t k = uniform_index(rng, 1, n);
      std::vector<HermitianTensor> cs, commuting;
      const Matrix u = random_unitary(rng, n);
      for (std::size_t j = 0; j < m; ++j) {
        cs.push_back(random_positive(rng, shape, 0.25, 2.0));
        RealVector lam(static_cast<Eigen::Index>(n));
        for (auto& v : lam) v = uniform(rng, 0.25, 2.0);
        commuting.push_back(with_eigenvalues(u, shape, lam));
      }
      for (std::size_t q = 0; q < fs.size(); ++q) {
        const auto& f = fs[q].f;
        const double lhs = golden_thompson_lhs(f, cs, k);
        const auto lg = golden_thompson_rhs_log(f, cs, k, cfg.quadrature);
        const auto ln = golden_thompson_rhs_linear(f, cs, k, cfg.quadrature);
        rows[i].log_excess[q] = (lhs - lg.upper()) / (1 + lg.upper());
        rows[i].lin_excess[q] = (lhs - ln.upper()) / (1 + ln.upper());

        const double clhs = golden_thompson_lhs(f, commuting, k);
        const auto clg = golden_thompson_rhs_log(f, commuting, k, cfg.quadrature);
        const auto cln = golden_thompson_rhs_linear(f, commuting, k, cfg.quadrature);
        auto gap = [&](const InterpolationValue& v) {
          return std::abs(clhs - v.value) / (v.truncation_bound + v.quadrature_error + 1e-9 * (1 + clhs));
        };
        rows[i].log_gap[q] = gap(clg);
        rows[i].lin_gap[q] = gap(cln);
      }
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  });
  for (std::size_t q = 0; q < fs.size(); ++q) {
    double le = -kInf, ne = -kInf, lg = 0, ng = 0;
    std::string error;
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        if (error.empty()) error = r.error;
        continue;
      }
      le = std::max(le, r.log_excess[q]);
      ne = std::max(ne, r.lin_excess[q]);
      lg = std::max(lg, r.log_gap[q]);
      ng = std::max(ng, r.lin_gap[q]);
    }
    const std::string f = fs[q].name;
    if (!error.empty()) {
      out.push_back(failed("interpolation.log_form." + f, error));
      out.push_back(failed("interpolation.linear_form." + f, error));
      continue;
    }
    out.push_back(make_check("interpolation.log_form." + f, le, 1e-9));
    out.push_back(make_check("interpolation.linear_form." + f, ne, 1e-9));
    out.push_back(make_check("interpolation.commuting_log." + f, lg, 1.0));
    out.push_back(make_check("interpolation.commuting_linear." + f, ng, 1.0));
  }
}

void discrete_checks(const ExperimentConfig& cfg, std::size_t workers, Records& out) {
  const std::array modes = {AverageMode::weak, AverageMode::strong, AverageMode::weak_log, AverageMode::log};
  for (std::size_t mi = 0; mi < modes.size(); ++mi) {
    const AverageMode mode = modes[mi];
    std::vector<std::array<int, 2>> res(cfg.inequalities.discrete_trials);  // {premise failed, violation}
    parallel_for(res.size(), workers, [&](std::size_t i) {
      Rng rng = trial_rng(cfg.seed, 210 + mi, i);
      const DiscreteInstance inst = sample_discrete_instance(rng, mode);
      const AverageReport r = verify_discrete_average_majorization(inst.c, inst.measure, inst.f, inst.k, mode);
      res[i] = {r.premise_holds ? 0 : 1, r.violation() ? 1 : 0};
    });
    double premise_failures = 0, violations = 0;
    for (const auto& r : res) {
      premise_failures += r[0];
      violations += r[1];
    }
    const std::string m = to_string(mode);
    out.push_back(make_check("discrete." + m + ".violations", violations, 0));
    out.push_back(make_check("discrete." + m + ".premise_construction", premise_failures, 0));
  }
}

void kyfan_sum_checks(const ExperimentConfig& cfg, std::size_t workers, Records& out) {
  std::vector<double> ratio(cfg.inequalities.kyfan_sum_trials);
  parallel_for(ratio.size(), workers, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 220, i);
    const TensorShape shape = pick_shape(rng, {{2}, {3}, {2, 2}, {3, 3}});
    const std::size_t m = uniform_index(rng, 1, 4);
    std::vector<Tensor> ts;
    for (std::size_t j = 0; j < m; ++j) ts.push_back(random_tensor(rng, shape));
    const double s = static_cast<double>(uniform_index(rng, 1, 3));
    const auto r = check_kyfan_sum_inequality(ts, s, uniform_index(rng, 1, shape.unfold_rows()));
    ratio[i] = r.lhs / r.rhs;
  });
  double worst = 0;
  for (double r : ratio) worst = std::max(worst, r);
  out.push_back(make_check("kyfan_sum.ratio", worst, 1 + 1e-9));
}

void holder_checks(const ExperimentConfig& cfg, std::size_t workers, Records& out) {
  std::vector<double> ratio(cfg.inequalities.holder_trials);
  parallel_for(ratio.size(), workers, [&](std::size_t i) {
    Rng rng = trial_rng(cfg.seed, 230, i);
    const std::size_t n = uniform_index(rng, 1, 8), m = uniform_index(rng, 1, 4);
    const std::size_t k = uniform_index(rng, 1, n);
    std::vector<double> alpha(m);
    for (auto& a : alpha) a = uniform(rng, 0.05, 1);
    const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
    std::vector<double> prod(n, 1.0);
    double rhs = 1;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> b(n);
      for (auto& v : b) v = uniform(rng, 0, 3);
      for (std::size_t q = 0; q < n; ++q) prod[q] *= std::pow(b[q], alpha[j] / total);
      std::sort(b.begin(), b.end(), std::greater<>());
      rhs *= std::pow(gauge_rho(std::span<const double>(b), k), alpha[j] / total);
    }
    std::sort(prod.begin(), prod.end(), std::greater<>());
    const double lhs = gauge_rho(std::span<const double>(prod), k);
    ratio[i] = rhs > 0 ? lhs / rhs : 0;
  });
  double worst = 0;
  for (double r : ratio) worst = std::max(worst, r);
  out.push_back(make_check("holder_gauge.ratio", worst, 1 + 1e-12));
}

void convexity_checks(Records& out) {
  for (const auto& nf : interpolation_functions()) {
    const auto c = check_log_convexity(nf.f, -3, 3);
    out.push_back(make_check(std::string("convexity.log_f_exp.") + nf.name, -c.worst_second_difference, 1e-10));
    const auto g = check_exp_convexity(nf.f, -3, 3);
    out.push_back(make_check(std::string("convexity.g_exp.") + nf.name, -g.worst_second_difference, 1e-10));
  }
}

Records inequalities_suite(const ExperimentConfig& cfg, std::size_t workers) {
  Records out;
  guarded(out, "interpolation", [&] { interpolation_checks(cfg, workers, out); });
  guarded(out, "discrete", [&] { discrete_checks(cfg, workers, out); });
  guarded(out, "kyfan_sum", [&] { kyfan_sum_checks(cfg, workers, out); });
  guarded(out, "holder_gauge", [&] { holder_checks(cfg, workers, out); });
  guarded(out, "convexity", [&] { convexity_checks(out); });
  return out;
}

// expander -------------------------------------------------------------------

void expansion_check(const RegularGraph& g, const std::string& label, std::uint64_t seed, Records& out) {
  const std::string name = "expansion." + label;
  guarded(out, name, [&] {
    const double lambda = spectral_expansion(g);
    const Eigen::MatrixXd a = normalized_adjacency(g);
    Rng rng = make_rng(seed, 0);
    std::normal_distribution<double> normal;
    double worst = 0;
    for (int i = 0; i < 100 && g.n() > 1; ++i) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(g.n()));
      for (auto& v : x) v = normal(rng);
      x.array() -= x.mean();
      worst = std::max(worst, (a * x).norm() / x.norm());
    }
    out.push_back(make_check(name, worst, lambda + 1e-9));
  });
}

void stationarity_check(const RegularGraph& g, const ExpanderSpec& spec, std::uint64_t seed, std::size_t workers,
                        Records& out) {
  if (g.n() < 2) return;
  std::vector<std::size_t> steps{1, std::max<std::size_t>(1, spec.kappa / 2), spec.kappa};
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  std::vector<std::vector<std::size_t>> visits(spec.stationarity_walks);
  parallel_for(visits.size(), workers, [&](std::size_t i) {
    const WalkSample w = sample_walk(g, spec.kappa, derive_seed(seed, i));
    for (std::size_t s : steps) visits[i].push_back(w.vertices[s - 1]);
  });
  for (std::size_t si = 0; si < steps.size(); ++si) {
    std::vector<std::size_t> counts(g.n(), 0);
    for (const auto& v : visits) ++counts[v[si]];
    out.push_back(make_check("stationarity." + g.name() + ".step=" + std::to_string(steps[si]),
                             chi_square_uniform(counts), chi_square_quantile(g.n() - 1)));
  }
}

void transfer_checks(const VertexTensorAssignment& as, const std::string& label, const ExpanderSpec& spec,
                     std::uint64_t seed, std::size_t workers, Records& out) {
  const double lambda = spectral_expansion(as.graph());
  for (double t : spec.t_values) {
    const std::string tl = ".t=" + format_double(t);
    guarded(out, "certificate." + label + tl, [&] {
      const auto rep = contraction_certificate(as, t, spec.a, spec.b, spec.test_vectors, derive_seed(seed, 1));
      out.push_back(make_check("certificate." + label + tl, rep.worst_excess, 1e-9));
    });
    guarded(out, "transfer_bound." + label + tl, [&] {
      const double exact = transfer_expectation(as, t, spec.a, spec.b, spec.kappa);
      ChernoffParams p;
      p.kappa = spec.kappa;
      p.dim = as.dim();
      p.radius = as.radius();
      const double bound = expectation_bound(p, t, spec.a, spec.b, lambda);
      out.push_back(make_check("transfer_bound." + label + tl, exact, bound));
    });
  }
  if (spec.t_values.empty()) return;
  const double t = spec.t_values.back();
  const std::string name = "transfer_mc." + label + ".t=" + format_double(t);
  guarded(out, name, [&] {
    const double exact = transfer_expectation(as, t, spec.a, spec.b, spec.kappa);
    const auto mc = monte_carlo_trace(as, t, spec.a, spec.b, spec.kappa, spec.mc_walks, derive_seed(seed, 2), workers);
    out.push_back(make_check(name, std::abs(exact - mc.mean), 3 * mc.std_error));
  });
}

Records expander_suite(const ExperimentConfig& cfg, std::size_t workers) {
  Records out;
  const std::uint64_t base = derive_seed(cfg.seed, 300);
  std::vector<RegularGraph> graphs{gen_complete(4), gen_cycle(5), gen_hypercube(3)};
  std::size_t gi = 0;
  for (const auto& g : graphs) {
    const std::uint64_t gs = derive_seed(base, ++gi);
    expansion_check(g, g.name(), derive_seed(gs, 1), out);
    stationarity_check(g, cfg.expander, derive_seed(gs, 2), workers, out);
    for (const std::vector<std::size_t>& dims : {std::vector<std::size_t>{2}, std::vector<std::size_t>{2, 2}}) {
      const std::string label = g.name() + "." + dims_label(dims);
      guarded(out, "assignment." + label, [&] {
        const auto as = random_assignment(g, dims, cfg.assignment.radius, derive_seed(gs, 3 + dims.size()));
        transfer_checks(as, label, cfg.expander, derive_seed(gs, 10 + dims.size()), workers, out);
      });
    }
  }
  guarded(out, "assignment.config", [&] {
    const auto as = build_assignment(cfg);
    expansion_check(as.graph(), "config", derive_seed(base, 100), out);
    transfer_checks(as, "config", cfg.expander, derive_seed(base, 101), workers, out);
  });
  return out;
}

// chernoff_sweep -------------------------------------------------------------

Records chernoff_suite(const ExperimentConfig& cfg, std::size_t workers, std::vector<TailRow>& table) {
  Records out;
  const auto as = build_assignment(cfg);
  const double lambda = spectral_expansion(as.graph());
  const DominationFit fit = fit_gaussian_domination(cfg.domination.window, cfg.domination.sigma_grid());
  {
    // Audit at random points inside the window.
    Rng rng = trial_rng(cfg.seed, 400, 0);
    double worst = 0;
    for (int i = 0; i < 100000; ++i) {
      const double tau = uniform(rng, -fit.window, fit.window);
      const double gauss = fit.c * std::exp(-tau * tau / (2 * fit.sigma * fit.sigma)) /
                           (fit.sigma * std::sqrt(2 * std::numbers::pi));
      worst = std::max(worst, beta0_density(tau) / gauss);
    }
    out.push_back(make_check("domination.audit_ratio", worst, 1.0));
  }

  ChernoffParams p;
  p.kappa = cfg.chernoff.kappa;
  p.k = cfg.chernoff.k;
  p.lambda_bar = 1 - lambda;
  p.dim = as.dim();
  p.radius = as.radius();
  if (p.k > p.dim) throw ConfigError("chernoff.k: exceeds tensor dimension " + std::to_string(p.dim));

  std::vector<double> thetas = cfg.theta_grid();
  std::sort(thetas.begin(), thetas.end());
  std::vector<TailBound> bounds;
  std::vector<double> ts;
  for (double theta : thetas) {
    p.theta = theta;
    bounds.push_back(theorem_bound(p, cfg.poly, fit));
    ts.push_back(bounds.back().t);
  }
  const auto tails = empirical_tail(as, cfg.poly, p.k, thetas, ts, cfg.chernoff.walks, p.kappa,
                                    derive_seed(cfg.seed, 401), workers);

  double worst_increase = 0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const std::string tl = ".theta=" + format_double(thetas[i]);
    const auto& b = bounds[i];
    const auto& e = tails[i];
    table.push_back({thetas[i], e.p_hat, e.std_error, b.value, b.vacuous, e.assumption3_violations});

    if (b.vacuous) {
      out.push_back(make_skip("tail" + tl, "bound is vacuous (>= 1)"));
    } else if (e.assumption3_violations > 0) {
      out.push_back(make_skip("tail" + tl, "assumption3 check fails on " + std::to_string(e.assumption3_violations) +
                                               " walks"));
    } else {
      out.push_back(make_check("tail" + tl, e.p_hat, b.value + 3 * e.std_error));
    }

    p.theta = thetas[i];
    if (!cfg.poly.is_identity()) {
      out.push_back(make_skip("agreement" + tl, "closed form needs the identity polynomial"));
    } else {
      guarded(out, "agreement" + tl, [&] {
        const TailBound c = corollary_bound(p, fit);
        // Compared in the log domain: deep-tail values underflow to 0.
        const double rel_gap = std::expm1(std::abs(c.log_value - b.log_value));
        out.push_back(make_check("agreement" + tl, rel_gap, 1e-6));
      });
    }

    const double x = b.t * p.radius * cfg.poly.power * static_cast<double>(cfg.poly.degree());
    const bool holds = expectation_bound_applies(b.t * cfg.poly.power * static_cast<double>(cfg.poly.degree()),
                                                 p.radius, 1, 0, lambda);
    out.push_back(make_skip("expectation_preconditions" + tl,
                            std::string(holds ? "hold" : "fail") + " at t=" + format_double(b.t) +
                                " (t*r*l*s = " + format_double(x) + "); reported, not asserted"));
    if (i > 0) worst_increase = std::max(worst_increase, (b.value - bounds[i - 1].value) / bounds[i - 1].value);
  }
  out.push_back(make_check("bound.nonincreasing_in_theta", worst_increase, 1e-9));
  return out;
}

}  // namespace

// Public helpers -------------------------------------------------------------

DiscreteInstance sample_discrete_instance(Rng& rng, AverageMode mode) {
  const TensorShape shape = pick_shape(rng, {{2}, {3}, {4}, {2, 2}});
  const std::size_t n = shape.unfold_rows();
  const std::size_t m = uniform_index(rng, 1, 3);
  const bool log_mode = mode == AverageMode::weak_log || mode == AverageMode::log;
  const bool weak = mode == AverageMode::weak || mode == AverageMode::weak_log;
  const std::size_t choice = uniform_index(rng, 0, 2);
  // x^2 is non-decreasing only on [0, inf).
  const bool positive = log_mode || (mode == AverageMode::weak && choice == 1);

  std::vector<double> w(m);
  for (auto& v : w) v = uniform(rng, 0.1, 1);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;

  std::vector<HermitianTensor> atoms;
  RealVector avg = RealVector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < m; ++j) {
    atoms.push_back(positive ? random_positive(rng, shape, 0.2, 3.0)
                             : random_hermitian(rng, shape, uniform(rng, 0.5, 2.0)));
    const RealVector lam = hermitian_eig(atoms.back()).eigenvalues;
    avg += w[j] * (log_mode ? RealVector(lam.array().log()) : lam);
  }
  const Eigen::MatrixXd d = random_doubly_stochastic(rng, n);
  RealVector x = d * avg;
  if (weak) {
    for (auto& v : x) v -= positive && !log_mode ? uniform(rng, 0, 0.5) * v : uniform(rng, 0, 0.5);
  }
  if (log_mode) x = x.array().exp();

  DiscreteInstance inst{with_eigenvalues(random_unitary(rng, n), shape, x), DiscreteMeasure(atoms, w), {}, {}, 1};
  const double c = log_mode ? uniform(rng, 0, 1) : uniform(rng, -1, 1);
  switch (choice) {
    case 0:
      inst.f = [](double v) { return std::exp(v); };
      inst.f_name = "exp";
      break;
    case 1:
      inst.f = [](double v) { return v * v; };
      inst.f_name = "x2";
      break;
    default:
      inst.f = [c](double v) { return std::max(v + c, 0.0); };
      inst.f_name = "relu_shift";
      break;
  }
  inst.k = uniform_index(rng, 1, n);
  return inst;
}

double chi_square_uniform(const std::vector<std::size_t>& counts) {
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return stat;
}

double chi_square_quantile(std::size_t df, double z) {
  const double k = static_cast<double>(df);
  const double h = 2 / (9 * k);
  return k * std::pow(1 - h + z * std::sqrt(h), 3);
}

Report run(const ExperimentConfig& cfg, std::size_t workers) {
  validate(cfg);
  Report r;
  r.suite = to_string(cfg.suite);
  r.config = cfg.echo();
  r.seed = cfg.seed;
  switch (cfg.suite) {
    case Suite::tensor_props: r.checks = tensor_props_suite(cfg, workers); break;
    case Suite::inequalities: r.checks = inequalities_suite(cfg, workers); break;
    case Suite::expander: r.checks = expander_suite(cfg, workers); break;
    case Suite::chernoff_sweep: r.checks = chernoff_suite(cfg, workers, r.tail_table); break;
  }
  std::stable_sort(r.checks.begin(), r.checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  return r;
}

}  // namespace tec
