#pragma once

#include <cstddef>
#include <vector>

#include "tec/rng.hpp"
#include "tec/tensor.hpp"

namespace tec {

// Samplers for randomized checks. All draw from the caller's stream only.

/// Entries with independent standard normal real and imaginary parts.
Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols);
Tensor random_tensor(Rng& rng, const TensorShape& shape);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
Matrix random_unitary(Rng& rng, std::size_t n);

/// (G + G^H) / 2 rescaled to spectral norm `norm`.
HermitianTensor random_hermitian(Rng& rng, const TensorShape& shape, double norm = 1.0);

/// U diag(lambda) U^H with eigenvalues uniform in [lo, hi].
HermitianTensor random_positive(Rng& rng, const TensorShape& shape, double lo, double hi);

/// U diag(values) U^H for a given unitary U.
HermitianTensor with_eigenvalues(const Matrix& unitary, const TensorShape& shape, const RealVector& values);

/// Square shape whose row group is one of the listed dimension lists.
TensorShape pick_shape(Rng& rng, const std::vector<std::vector<std::size_t>>& choices);

/// Convex combination of `terms` random permutation matrices.
Eigen::MatrixXd random_doubly_stochastic(Rng& rng, std::size_t n, std::size_t terms = 3);

double uniform(Rng& rng, double lo, double hi);
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

}  // namespace tec
