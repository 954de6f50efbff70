#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <memory>

namespace wg {

// Extremal eigenpairs of the Hermitian pencil K x = lambda M x (M positive
// definite). Sparse storage is Eigen's compressed format; rows of a
// Hermitian matrix stored column-compressed are its columns conjugated, so
// both CSR views used by the kernels and factorization views are the same
// buffers.
//
// Method contract: shift-invert Krylov (Lanczos in the M inner product, full
// reorthogonalization, deterministic start vector) on (K - shift*M)^{-1} M,
// with a sparse LDL^T factorization of the shifted matrix; problems of
// dimension <= dense_threshold go through a dense reference decomposition
// instead.

template <class Scalar>
using SpMatT = Eigen::SparseMatrix<Scalar>;

struct GevpOptions {
  int k = 1;
  double tol = 1e-10;  // relative residual ||K x - lambda M x|| <= tol ||K x||
  double shift = 0.0;
  int max_subspace = 0;  // 0: automatic
  int dense_threshold = 2000;
  std::uint64_t seed = 0x2545f4914f6cdd1dull;
};

template <class Scalar>
struct GevpResult {
  Eigen::VectorXd values;  // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // M-orthonormal
  Eigen::VectorXd residuals;
  int iterations = 0;
};

template <class Scalar>
GevpResult<Scalar> solve_gevp_smallest(const SpMatT<Scalar>& K,
                                       const SpMatT<Scalar>& M,
                                       GevpOptions opt = {});

// Dense reference decomposition (oracle path; also the fallback used for
// small dimensions inside solve_gevp_smallest).
template <class Scalar>
GevpResult<Scalar> dense_gevp(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& K,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& M, int k);

// Sparse direct solve A x = b: LDL^T first, LU fallback for indefinite or
// unsymmetric input; exact singularity is reported as SolverError.
class Factorization {
 public:
  explicit Factorization(const SpMatT<double>& A);
  ~Factorization();
  Factorization(Factorization&&) noexcept;
  Factorization& operator=(Factorization&&) noexcept;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wg
