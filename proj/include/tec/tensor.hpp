#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Index layout of a tensor in C^{I_1 x ... x I_M x J_1 x ... x J_N}.
///
/// The first group (row_dims) indexes rows of the square-matrix unfolding,
/// the second group (col_dims) indexes its columns. Both multi-indices are
/// flattened row-major, so the unfolding of a tensor is its entry array
/// read row-major as an unfold_rows() x unfold_cols() matrix.
class TensorShape {
 public:
  TensorShape(std::vector<std::size_t> row_dims, std::vector<std::size_t> col_dims);

  /// Shape (dims, dims), the shape of operators on C^{dims}.
  static TensorShape square(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& row_dims() const { return row_dims_; }
  const std::vector<std::size_t>& col_dims() const { return col_dims_; }
  std::size_t unfold_rows() const { return unfold_rows_; }
  std::size_t unfold_cols() const { return unfold_cols_; }
  std::size_t size() const { return unfold_rows_ * unfold_cols_; }
  bool is_square() const { return row_dims_ == col_dims_; }

  TensorShape transposed() const { return {col_dims_, row_dims_}; }

  /// Row-major flattening of a row (or column) multi-index.
  std::size_t row_offset(std::span<const std::size_t> idx) const;
  std::size_t col_offset(std::span<const std::size_t> idx) const;

  std::string to_string() const;

  bool operator==(const TensorShape& other) const {
    return row_dims_ == other.row_dims_ && col_dims_ == other.col_dims_;
  }

 private:
  std::vector<std::size_t> row_dims_;
  std::vector<std::size_t> col_dims_;
  std::size_t unfold_rows_ = 1;
  std::size_t unfold_cols_ = 1;
};

/// Dense complex tensor carried by its canonical unfolding.
class Tensor {
 public:
  /// Zero tensor.
  explicit Tensor(TensorShape shape);
  Tensor(TensorShape shape, Matrix unfolding);

  /// Builds a tensor from entries listed row-major over (i_1..i_M, j_1..j_N).
  static Tensor from_entries(TensorShape shape, std::span<const Complex> entries);

  const TensorShape& shape() const { return shape_; }
  const Matrix& unfolding() const { return unfolding_; }

  Complex at(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

  /// Entries in row-major order; inverse of from_entries.
  std::vector<Complex> entries() const;

  Tensor operator+(const Tensor& other) const;
  Tensor operator-(const Tensor& other) const;
  Tensor operator*(Complex scale) const;

 private:
  TensorShape shape_;
  Matrix unfolding_;
};

inline Tensor operator*(Complex scale, const Tensor& t) { return t * scale; }

/// Tensor equal to its conjugate transpose.
///
/// Construction checks ||X - X^H||_F <= 1e-10 ||X||_F and stores the
/// symmetrized (X + X^H) / 2, so the unfolding is exactly Hermitian.
class HermitianTensor {
 public:
  explicit HermitianTensor(const Tensor& t);

  static constexpr double kHermTol = 1e-10;

  const Tensor& tensor() const { return tensor_; }
  const TensorShape& shape() const { return tensor_.shape(); }
  const Matrix& unfolding() const { return tensor_.unfolding(); }

  HermitianTensor operator+(const HermitianTensor& other) const;
  HermitianTensor operator-(const HermitianTensor& other) const;
  HermitianTensor operator*(double scale) const;

 private:
  struct Trusted {};
  HermitianTensor(Tensor t, Trusted);
  friend HermitianTensor hermitian_from_trusted(Tensor t);

  Tensor tensor_;
};

/// Wraps a tensor known to be Hermitian by construction (symmetrizes only).
HermitianTensor hermitian_from_trusted(Tensor t);

/// Hermitian eigendecomposition H = sum_i lambda_i U_i (x) U_i^H.
struct Spectrum {
  TensorShape shape;
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // column i pairs with eigenvalues(i)
  std::size_t herm_rank = 0;

  static constexpr double kRankTol = 1e-10;

  /// Eigentensor U_i of shape (row_dims x [1]).
  Tensor eigentensor(std::size_t i) const;

  /// sum_i lambda_i U_i U_i^H.
  HermitianTensor reconstruct() const;
};

using RealFunction = std::function<double(double)>;

// Construction ---------------------------------------------------------------

HermitianTensor make_identity(const TensorShape& shape);
Tensor zeros(const TensorShape& shape);

// Einstein-product algebra ---------------------------------------------------

/// Contraction of X's column group with Y's row group.
Tensor einstein_product(const Tensor& x, const Tensor& y);
Tensor conj_transpose(const Tensor& x);
Complex trace(const Tensor& x);
/// <X, Y> = Tr(X^H * Y).
Complex inner_product(const Tensor& x, const Tensor& y);
double frobenius_norm(const Tensor& x);

/// Kronecker product. Row and column groups are concatenated
/// (X.rows ++ Y.rows, X.cols ++ Y.cols), which makes
/// unfold(X (x) Y) = kron(unfold(X), unfold(Y)).
Tensor kronecker(const Tensor& x, const Tensor& y);

/// Column tensor col(X): all indices moved into the row group,
/// shape (row_dims ++ col_dims, [1]).
Tensor column(const Tensor& x);

// Spectral calculus ----------------------------------------------------------

Spectrum hermitian_eig(const HermitianTensor& h);

/// sum_i f(lambda_i) U_i U_i^H. Throws DomainError when f is not finite at
/// some eigenvalue.
HermitianTensor spectral_map(const Spectrum& spectrum, const RealFunction& f);
HermitianTensor spectral_map(const HermitianTensor& h, const RealFunction& f);

HermitianTensor tensor_exp(const HermitianTensor& h);
/// Principal log of H + shift * I; DomainError on a nonpositive eigenvalue.
HermitianTensor tensor_log(const HermitianTensor& h, double shift = 0.0);

/// |X| = sqrt(X^H X); its eigenvalues are the singular values of unfold(X).
HermitianTensor abs_tensor(const Tensor& x);

/// C^z = sum_i lambda_i^z U_i U_i^H for positive C (after adding shift * I).
Tensor complex_power(const HermitianTensor& c, Complex z, double shift = 0.0);
Tensor complex_power(const Spectrum& spectrum, Complex z);

/// Product of all eigenvalues of the unfolding.
double hermitian_det(const HermitianTensor& h);

}  // namespace tec
