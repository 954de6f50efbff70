#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wg {

// Symmetric tridiagonal eigen-tools (Sturm counts, bisection, inverse
// iteration). This is the production path for the 1D Schrodinger matrices,
// which can have 10^4..10^5 rows; the dense reference decomposition serves
// as the oracle for dimensions where it is affordable.
struct SymTridiag {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;  // size n-1

  int n() const { return static_cast<int>(diag.size()); }

  // number of eigenvalues strictly below a
  int count_below(double a) const;

  // k smallest eigenvalues by bisection (ascending)
  std::vector<double> smallest(int k, double tol = 1e-13) const;

  // all eigenvalues strictly below threshold (ascending)
  std::vector<double> below(double threshold, double tol = 1e-13) const;

  // normalized eigenvector for an isolated eigenvalue via inverse iteration
  Eigen::VectorXd eigenvector(double lambda) const;

  double gershgorin_low() const;
  double gershgorin_high() const;
};

}  // namespace wg
