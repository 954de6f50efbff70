#include "wgspec/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wg {

int SymTridiag::count_below(double a) const {
  // Sturm sequence via the LDL^T recurrence; underflow guarded.
  const int m = n();
  int count = 0;
  double d = 1.0;
  const double tiny = std::numeric_limits<double>::min() / 1e-10;
  for (int i = 0; i < m; ++i) {
    double e2 = (i > 0) ? off[i - 1] * off[i - 1] : 0.0;
    d = diag[i] - a - (i > 0 ? e2 / d : 0.0);
    if (d == 0.0) d = -tiny;
    if (std::abs(d) < tiny) d = (d < 0 ? -tiny : tiny);
    if (d < 0.0) ++count;
  }
  return count;
}

double SymTridiag::gershgorin_low() const {
  double lo = std::numeric_limits<double>::max();
  const int m = n();
  for (int i = 0; i < m; ++i) {
    double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
               (i + 1 < m ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
  }
  return lo;
}

double SymTridiag::gershgorin_high() const {
  double hi = std::numeric_limits<double>::lowest();
  const int m = n();
  for (int i = 0; i < m; ++i) {
    double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
               (i + 1 < m ? std::abs(off[i]) : 0.0);
    hi = std::max(hi, diag[i] + r);
  }
  return hi;
}

namespace {

double bisect_kth(const SymTridiag& t, int k, double lo, double hi, double tol) {
  // smallest lambda with count_below(lambda) >= k+1
  while (hi - lo > tol * (1.0 + std::abs(lo) + std::abs(hi))) {
    double mid = 0.5 * (lo + hi);
    if (t.count_below(mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> SymTridiag::smallest(int k, double tol) const {
  k = std::min(k, n());
  std::vector<double> out;
  out.reserve(k);
  double lo = gershgorin_low(), hi = gershgorin_high();
  for (int i = 0; i < k; ++i) out.push_back(bisect_kth(*this, i, lo, hi, tol));
  return out;
}

std::vector<double> SymTridiag::below(double threshold, double tol) const {
  const int k = count_below(threshold);
  std::vector<double> out;
  out.reserve(k);
  double lo = gershgorin_low();
  for (int i = 0; i < k; ++i) out.push_back(bisect_kth(*this, i, lo, threshold, tol));
  return out;
}

Eigen::VectorXd SymTridiag::eigenvector(double lambda) const {
  // Inverse iteration on (T - lambda) with a partially pivoted tridiagonal LU
  // (dgttrf-style; the pivoted band has two superdiagonals).
  const int m = n();
  Eigen::VectorXd D = diag.array() - lambda;
  Eigen::VectorXd U1 = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd U2 = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd L = Eigen::VectorXd::Zero(m);
  std::vector<char> swapped(m, 0);
  for (int i = 0; i + 1 < m; ++i) U1[i] = off[i];
  for (int i = 0; i + 1 < m; ++i) {
    const double sub = off[i];  // row i+1 is untouched until this step
    if (std::abs(D[i]) >= std::abs(sub)) {
      double denom = (D[i] == 0.0) ? 1e-300 : D[i];
      const double mult = sub / denom;
      L[i] = mult;
      D[i + 1] -= mult * U1[i];
      // u2 of row i is zero here, so u1[i+1] keeps its original value
    } else {
      swapped[i] = 1;
      const double row_i_diag = D[i];   // becomes the new subdiagonal source
      const double row_i_sup = U1[i];
      D[i] = sub;
      U1[i] = D[i + 1];
      U2[i] = (i + 2 < m) ? off[i + 1] : 0.0;
      const double mult = row_i_diag / D[i];
      L[i] = mult;
      D[i + 1] = row_i_sup - mult * U1[i];
      if (i + 2 < m) U1[i + 1] = -mult * U2[i];  // old row i had 0 there
    }
  }

  auto solve = [&](Eigen::VectorXd b) {
    for (int i = 0; i + 1 < m; ++i) {
      if (swapped[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= L[i] * b[i];
    }
    for (int i = m - 1; i >= 0; --i) {
      double s = b[i];
      if (i + 1 < m) s -= U1[i] * b[i + 1];
      if (i + 2 < m) s -= U2[i] * b[i + 2];
      const double denom = (D[i] == 0.0) ? 1e-300 : D[i];
      b[i] = s / denom;
    }
    return b;
  };

  Eigen::VectorXd v = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(double(m)));
  for (int it = 0; it < 3; ++it) {
    v = solve(v);
    v.normalize();
  }
  int imax = 0;
  for (int i = 1; i < m; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (v[imax] < 0) v = -v;
  return v;
}

}  // namespace wg
