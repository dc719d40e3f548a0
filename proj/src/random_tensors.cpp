#include "tec/random_tensors.hpp"

#include <algorithm>
#include <numeric>

#include "tec/norms.hpp"

namespace tec {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal;
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

Tensor random_tensor(Rng& rng, const TensorShape& shape) {
  return {shape, random_gaussian(rng, shape.unfold_rows(), shape.unfold_cols())};
}

Matrix random_unitary(Rng& rng, std::size_t n) {
  const Matrix g = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

HermitianTensor random_hermitian(Rng& rng, const TensorShape& shape, double norm) {
  const Matrix g = random_gaussian(rng, shape.unfold_rows(), shape.unfold_cols());
  Matrix h = (g + g.adjoint()) / 2.0;
  const double s = spectral_norm(Tensor(shape, h));
  if (s > 0) h *= norm / s;
  return HermitianTensor(Tensor(shape, std::move(h)));
}

HermitianTensor with_eigenvalues(const Matrix& unitary, const TensorShape& shape, const RealVector& values) {
  Matrix m = unitary * values.cast<Complex>().asDiagonal() * unitary.adjoint();
  return hermitian_from_trusted(Tensor(shape, std::move(m)));
}

HermitianTensor random_positive(Rng& rng, const TensorShape& shape, double lo, double hi) {
  const std::size_t n = shape.unfold_rows();
  RealVector lambda(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda(i) = uniform(rng, lo, hi);
  return with_eigenvalues(random_unitary(rng, n), shape, lambda);
}

TensorShape pick_shape(Rng& rng, const std::vector<std::vector<std::size_t>>& choices) {
  return TensorShape::square(choices[uniform_index(rng, 0, choices.size() - 1)]);
}

Eigen::MatrixXd random_doubly_stochastic(Rng& rng, std::size_t n, std::size_t terms) {
  const auto s = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(s, s);
  std::vector<double> w(terms);
  for (auto& x : w) x = uniform(rng, 0.05, 1.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<Eigen::Index> perm(n);
  for (std::size_t t = 0; t < terms; ++t) {
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Eigen::Index i = 0; i < s; ++i) d(i, perm[static_cast<std::size_t>(i)]) += w[t] / total;
  }
  return d;
}

}  // namespace tec
