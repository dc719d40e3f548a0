#include "tec/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tec/errors.hpp"

namespace tec {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

std::size_t flatten(const std::vector<std::size_t>& dims, std::span<const std::size_t> idx) {
  if (idx.size() != dims.size()) {
    throw ShapeError("multi-index has " + std::to_string(idx.size()) + " components, expected " +
                     std::to_string(dims.size()));
  }
  std::size_t offset = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (idx[k] >= dims[k]) throw ShapeError("multi-index component out of range");
    offset = offset * dims[k] + idx[k];
  }
  return offset;
}

std::string dims_string(const std::vector<std::size_t>& dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < dims.size(); ++k) os << (k ? "," : "") << dims[k];
  os << ']';
  return os.str();
}

void require_square(const TensorShape& s, const char* what) {
  if (!s.is_square()) throw ShapeError(std::string(what) + " requires a square shape, got " + s.to_string());
}

}  // namespace

// TensorShape ----------------------------------------------------------------

TensorShape::TensorShape(std::vector<std::size_t> row_dims, std::vector<std::size_t> col_dims)
    : row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims)) {
  if (row_dims_.empty() || col_dims_.empty()) throw ShapeError("tensor index groups must be non-empty");
  auto positive = [](std::size_t d) { return d >= 1; };
  if (!std::all_of(row_dims_.begin(), row_dims_.end(), positive) ||
      !std::all_of(col_dims_.begin(), col_dims_.end(), positive)) {
    throw ShapeError("tensor dimensions must be >= 1");
  }
  unfold_rows_ = product(row_dims_);
  unfold_cols_ = product(col_dims_);
}

TensorShape TensorShape::square(std::vector<std::size_t> dims) { return {dims, dims}; }

std::size_t TensorShape::row_offset(std::span<const std::size_t> idx) const { return flatten(row_dims_, idx); }

std::size_t TensorShape::col_offset(std::span<const std::size_t> idx) const { return flatten(col_dims_, idx); }

std::string TensorShape::to_string() const { return dims_string(row_dims_) + "x" + dims_string(col_dims_); }

// Tensor ---------------------------------------------------------------------

Tensor::Tensor(TensorShape shape)
    : shape_(std::move(shape)),
      unfolding_(Matrix::Zero(static_cast<Eigen::Index>(shape_.unfold_rows()),
                              static_cast<Eigen::Index>(shape_.unfold_cols()))) {}

Tensor::Tensor(TensorShape shape, Matrix unfolding) : shape_(std::move(shape)), unfolding_(std::move(unfolding)) {
  if (static_cast<std::size_t>(unfolding_.rows()) != shape_.unfold_rows() ||
      static_cast<std::size_t>(unfolding_.cols()) != shape_.unfold_cols()) {
    throw ShapeError("unfolding is " + std::to_string(unfolding_.rows()) + "x" + std::to_string(unfolding_.cols()) +
                     " but shape " + shape_.to_string() + " needs " + std::to_string(shape_.unfold_rows()) + "x" +
                     std::to_string(shape_.unfold_cols()));
  }
}

Tensor Tensor::from_entries(TensorShape shape, std::span<const Complex> entries) {
  if (entries.size() != shape.size()) {
    throw ShapeError("expected " + std::to_string(shape.size()) + " entries, got " + std::to_string(entries.size()));
  }
  const auto rows = static_cast<Eigen::Index>(shape.unfold_rows());
  const auto cols = static_cast<Eigen::Index>(shape.unfold_cols());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = entries[static_cast<std::size_t>(i * cols + j)];
  return {std::move(shape), std::move(m)};
}

Complex Tensor::at(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  return unfolding_(static_cast<Eigen::Index>(shape_.row_offset(row_idx)),
                    static_cast<Eigen::Index>(shape_.col_offset(col_idx)));
}

std::vector<Complex> Tensor::entries() const {
  std::vector<Complex> out;
  out.reserve(shape_.size());
  for (Eigen::Index i = 0; i < unfolding_.rows(); ++i)
    for (Eigen::Index j = 0; j < unfolding_.cols(); ++j) out.push_back(unfolding_(i, j));
  return out;
}

Tensor Tensor::operator+(const Tensor& other) const {
  if (!(shape_ == other.shape_)) throw ShapeError("addition of " + shape_.to_string() + " and " + other.shape_.to_string());
  return {shape_, unfolding_ + other.unfolding_};
}

Tensor Tensor::operator-(const Tensor& other) const {
  if (!(shape_ == other.shape_)) throw ShapeError("subtraction of " + shape_.to_string() + " and " + other.shape_.to_string());
  return {shape_, unfolding_ - other.unfolding_};
}

Tensor Tensor::operator*(Complex scale) const { return {shape_, unfolding_ * scale}; }

// HermitianTensor ------------------------------------------------------------

HermitianTensor::HermitianTensor(const Tensor& t) : tensor_(t) {
  require_square(t.shape(), "HermitianTensor");
  const Matrix& m = t.unfolding();
  const double asym = (m - m.adjoint()).norm();
  if (asym > kHermTol * m.norm()) {
    throw DomainError("tensor is not Hermitian: ||X - X^H||_F = " + std::to_string(asym));
  }
  tensor_ = Tensor(t.shape(), (m + m.adjoint()) * 0.5);
}

HermitianTensor::HermitianTensor(Tensor t, Trusted) : tensor_(std::move(t)) {
  const Matrix& m = tensor_.unfolding();
  tensor_ = Tensor(tensor_.shape(), (m + m.adjoint()) * 0.5);
}

HermitianTensor hermitian_from_trusted(Tensor t) {
  require_square(t.shape(), "HermitianTensor");
  return HermitianTensor(std::move(t), HermitianTensor::Trusted{});
}

HermitianTensor HermitianTensor::operator+(const HermitianTensor& other) const {
  return hermitian_from_trusted(tensor_ + other.tensor_);
}

HermitianTensor HermitianTensor::operator-(const HermitianTensor& other) const {
  return hermitian_from_trusted(tensor_ - other.tensor_);
}

HermitianTensor HermitianTensor::operator*(double scale) const { return hermitian_from_trusted(tensor_ * scale); }

// Spectrum -------------------------------------------------------------------

Tensor Spectrum::eigentensor(std::size_t i) const {
  TensorShape col_shape(shape.row_dims(), {1});
  return {std::move(col_shape), eigenvectors.col(static_cast<Eigen::Index>(i))};
}

HermitianTensor Spectrum::reconstruct() const {
  Matrix m = eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  return hermitian_from_trusted(Tensor(shape, std::move(m)));
}

// Construction ---------------------------------------------------------------

HermitianTensor make_identity(const TensorShape& shape) {
  require_square(shape, "identity");
  const auto n = static_cast<Eigen::Index>(shape.unfold_rows());
  return hermitian_from_trusted(Tensor(shape, Matrix::Identity(n, n)));
}

Tensor zeros(const TensorShape& shape) { return Tensor(shape); }

// Einstein-product algebra ---------------------------------------------------

Tensor einstein_product(const Tensor& x, const Tensor& y) {
  if (x.shape().col_dims() != y.shape().row_dims()) {
    throw ShapeError("Einstein product contracts " + x.shape().to_string() + " with " + y.shape().to_string());
  }
  return {TensorShape(x.shape().row_dims(), y.shape().col_dims()), x.unfolding() * y.unfolding()};
}

Tensor conj_transpose(const Tensor& x) { return {x.shape().transposed(), x.unfolding().adjoint()}; }

Complex trace(const Tensor& x) {
  require_square(x.shape(), "trace");
  return x.unfolding().trace();
}

Complex inner_product(const Tensor& x, const Tensor& y) {
  if (!(x.shape() == y.shape())) {
    throw ShapeError("inner product of " + x.shape().to_string() + " and " + y.shape().to_string());
  }
  // Tr(X^H Y) without forming the product.
  return (x.unfolding().conjugate().cwiseProduct(y.unfolding())).sum();
}

double frobenius_norm(const Tensor& x) { return x.unfolding().norm(); }

Tensor kronecker(const Tensor& x, const Tensor& y) {
  std::vector<std::size_t> rows = x.shape().row_dims();
  std::vector<std::size_t> cols = x.shape().col_dims();
  rows.insert(rows.end(), y.shape().row_dims().begin(), y.shape().row_dims().end());
  cols.insert(cols.end(), y.shape().col_dims().begin(), y.shape().col_dims().end());

  const Matrix& a = x.unfolding();
  const Matrix& b = y.unfolding();
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return {TensorShape(std::move(rows), std::move(cols)), std::move(k)};
}

Tensor column(const Tensor& x) {
  std::vector<std::size_t> dims = x.shape().row_dims();
  dims.insert(dims.end(), x.shape().col_dims().begin(), x.shape().col_dims().end());
  const auto entries = x.entries();
  return Tensor::from_entries(TensorShape(std::move(dims), {1}), entries);
}

// Spectral calculus ----------------------------------------------------------

Spectrum hermitian_eig(const HermitianTensor& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.unfolding());
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");

  // Eigen returns ascending order.
  Spectrum s{h.shape(), solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse(), 0};
  const double scale = s.eigenvalues.size() ? s.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (std::abs(s.eigenvalues(i)) > Spectrum::kRankTol * scale) ++s.herm_rank;
  return s;
}

HermitianTensor spectral_map(const Spectrum& spectrum, const RealFunction& f) {
  RealVector mapped(spectrum.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped(i) = f(spectrum.eigenvalues(i));
    if (!std::isfinite(mapped(i))) {
      throw DomainError("spectral function undefined at eigenvalue " + std::to_string(spectrum.eigenvalues(i)));
    }
  }
  Matrix m = spectrum.eigenvectors * mapped.cast<Complex>().asDiagonal() * spectrum.eigenvectors.adjoint();
  return hermitian_from_trusted(Tensor(spectrum.shape, std::move(m)));
}

HermitianTensor spectral_map(const HermitianTensor& h, const RealFunction& f) {
  return spectral_map(hermitian_eig(h), f);
}

HermitianTensor tensor_exp(const HermitianTensor& h) {
  return spectral_map(h, [](double x) { return std::exp(x); });
}

HermitianTensor tensor_log(const HermitianTensor& h, double shift) {
  if (shift < 0) throw ArgumentError("shift must be >= 0");
  return spectral_map(h, [shift](double x) {
    const double y = x + shift;
    if (!(y > 0)) throw DomainError("log of nonpositive eigenvalue " + std::to_string(y));
    return std::log(y);
  });
}

HermitianTensor abs_tensor(const Tensor& x) {
  require_square(x.shape(), "abs_tensor");
  // |X| = V diag(sigma) V^H from X = U diag(sigma) V^H.
  Eigen::JacobiSVD<Matrix> svd(x.unfolding(), Eigen::ComputeFullV);
  const Matrix& v = svd.matrixV();
  Matrix m = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
  return hermitian_from_trusted(Tensor(x.shape(), std::move(m)));
}

Tensor complex_power(const Spectrum& spectrum, Complex z) {
  ComplexVector powered(spectrum.eigenvalues.size());
  for (Eigen::Index i = 0; i < powered.size(); ++i) {
    const double lambda = spectrum.eigenvalues(i);
    if (!(lambda > 0)) throw DomainError("complex power needs positive eigenvalues, got " + std::to_string(lambda));
    powered(i) = std::exp(z * std::log(lambda));
  }
  Matrix m = spectrum.eigenvectors * powered.asDiagonal() * spectrum.eigenvectors.adjoint();
  return {spectrum.shape, std::move(m)};
}

Tensor complex_power(const HermitianTensor& c, Complex z, double shift) {
  if (shift < 0) throw ArgumentError("shift must be >= 0");
  if (shift == 0) return complex_power(hermitian_eig(c), z);
  return complex_power(hermitian_eig(c + make_identity(c.shape()) * shift), z);
}

double hermitian_det(const HermitianTensor& h) { return hermitian_eig(h).eigenvalues.prod(); }

}  // namespace tec
