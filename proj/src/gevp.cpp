#include "wgspec/gevp.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wgspec/common.hpp"

namespace wg {

namespace {

template <class Scalar>
double real_part(Scalar v) {
  if constexpr (std::is_same_v<Scalar, double>)
    return v;
  else
    return v.real();
}

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> deterministic_start(int n,
                                                             std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n);
  for (int i = 0; i < n; ++i) v[i] = Scalar(dist(gen));
  return v;
}

template <class Scalar>
Eigen::VectorXd residual_norms(
    const SpMatT<Scalar>& K, const SpMatT<Scalar>& M,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& X,
    const Eigen::VectorXd& lambda) {
  Eigen::VectorXd out(lambda.size());
  for (int j = 0; j < lambda.size(); ++j) {
    auto kx = (K * X.col(j)).eval();
    auto mx = (M * X.col(j)).eval();
    double denom = kx.norm();
    if (denom == 0.0) denom = 1.0;
    out[j] = (kx - lambda[j] * mx).norm() / denom;
  }
  return out;
}

}  // namespace

template <class Scalar>
GevpResult<Scalar> dense_gevp(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& K,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& M, int k) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(K, M);
  if (es.info() != Eigen::Success)
    throw SolverError("dense generalized eigensolver failed");
  const int n = static_cast<int>(K.rows());
  k = std::min(k, n);
  GevpResult<Scalar> res;
  res.values = es.eigenvalues().head(k);
  res.vectors = es.eigenvectors().leftCols(k);
  res.residuals.resize(k);
  for (int j = 0; j < k; ++j) {
    auto kx = (K * res.vectors.col(j)).eval();
    auto mx = (M * res.vectors.col(j)).eval();
    double denom = kx.norm();
    if (denom == 0.0) denom = 1.0;
    res.residuals[j] = (kx - res.values[j] * mx).norm() / denom;
  }
  res.iterations = 0;
  return res;
}

template <class Scalar>
GevpResult<Scalar> solve_gevp_smallest(const SpMatT<Scalar>& K,
                                       const SpMatT<Scalar>& M,
                                       GevpOptions opt) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(K.rows());
  if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows())
    throw std::invalid_argument("solve_gevp_smallest: dimension mismatch");
  const int k = std::min(opt.k, n);

  if (n <= opt.dense_threshold) {
    Mat Kd = Mat(K), Md = Mat(M);
    return dense_gevp<Scalar>(Kd, Md, k);
  }

  // factor K - shift*M, backing the shift off on breakdown
  double shift = opt.shift;
  std::unique_ptr<Eigen::SimplicialLDLT<SpMatT<Scalar>>> fact;
  for (int attempt = 0; attempt < 6; ++attempt) {
    SpMatT<Scalar> A = K - Scalar(shift) * M;
    fact = std::make_unique<Eigen::SimplicialLDLT<SpMatT<Scalar>>>();
    fact->compute(A);
    if (fact->info() == Eigen::Success) break;
    fact.reset();
    shift -= std::max(1.0, std::abs(shift));
  }
  if (!fact)
    throw SolverError("shift-invert factorization failed after retries");

  const int cap = std::min(n, opt.max_subspace > 0 ? opt.max_subspace
                                                   : std::max(6 * k + 60, 90));
  std::vector<Vec> basis;       // M-orthonormal Lanczos vectors
  std::vector<Vec> mbasis;      // M * basis, kept for reorthogonalization
  std::vector<double> alpha, beta;
  basis.reserve(cap);
  mbasis.reserve(cap);

  Vec v = deterministic_start<Scalar>(n, opt.seed);
  Vec mv = M * v;
  double nrm = std::sqrt(std::abs(real_part<Scalar>(v.dot(mv))));
  v /= nrm;
  mv /= nrm;
  basis.push_back(v);
  mbasis.push_back(mv);

  GevpResult<Scalar> res;
  Eigen::VectorXd ritz_values;
  Mat ritz_vectors;

  auto extract = [&](int m) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) {
        T(i, i + 1) = beta[i];
        T(i + 1, i) = beta[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    // largest theta of the shift-inverted operator <-> smallest lambda
    const int kk = std::min(k, m);
    ritz_values.resize(kk);
    ritz_vectors.resize(n, kk);
    for (int j = 0; j < kk; ++j) {
      const int col = m - 1 - j;  // descending theta
      double theta = es.eigenvalues()[col];
      if (theta == 0.0) theta = std::numeric_limits<double>::min();
      ritz_values[j] = shift + 1.0 / theta;
      Vec x = Vec::Zero(n);
      for (int i = 0; i < m; ++i) x += Scalar(es.eigenvectors()(i, col)) * basis[i];
      ritz_vectors.col(j) = x;
    }
    // ascending eigenvalues
    std::vector<int> order(kk);
    for (int j = 0; j < kk; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return ritz_values[a] < ritz_values[b];
    });
    Eigen::VectorXd vals(kk);
    Mat vecs(n, kk);
    for (int j = 0; j < kk; ++j) {
      vals[j] = ritz_values[order[j]];
      vecs.col(j) = ritz_vectors.col(order[j]);
    }
    ritz_values = vals;
    ritz_vectors = vecs;
  };

  int m = 0;
  for (m = 1; m <= cap; ++m) {
    // w = (K - shift M)^{-1} M v_m
    Vec w = fact->solve(mbasis.back());
    double a = real_part<Scalar>(Scalar(w.dot(mbasis.back())));
    alpha.push_back(a);
    w -= Scalar(a) * basis.back();
    if (m >= 2) w -= Scalar(beta[m - 2]) * basis[m - 2];
    // full reorthogonalization (twice) in the M inner product
    for (int pass = 0; pass < 2; ++pass) {
      Vec mw = M * w;
      for (int i = 0; i < m; ++i) {
        Scalar c = basis[i].dot(mw);
        if (std::abs(c) > 0) {
          w -= c * basis[i];
          mw -= c * mbasis[i];
        }
      }
    }
    Vec mw = M * w;
    double b = std::sqrt(std::max(0.0, real_part<Scalar>(Scalar(w.dot(mw)))));
    const bool breakdown = b < 1e-13;

    const bool check_now = breakdown || m == cap || m % 5 == 0 || m >= 2 * k + 8;
    if (check_now && m >= k) {
      extract(m);
      Eigen::VectorXd rn = residual_norms(K, M, ritz_vectors, ritz_values);
      bool done = true;
      for (int j = 0; j < rn.size(); ++j) done = done && rn[j] <= opt.tol;
      if (done && rn.size() == k) {
        res.values = ritz_values;
        res.vectors = ritz_vectors;
        res.residuals = rn;
        res.iterations = m;
        break;
      }
      if (breakdown || m == cap) {
        if (breakdown && rn.size() == k) {
          // invariant subspace hit; accept what we have
          res.values = ritz_values;
          res.vectors = ritz_vectors;
          res.residuals = rn;
          res.iterations = m;
          break;
        }
        throw SolverError("Lanczos did not converge within the subspace cap");
      }
    }
    if (breakdown) {
      // restart direction orthogonal to the current basis
      w = deterministic_start<Scalar>(n, opt.seed + m);
      for (int pass = 0; pass < 2; ++pass) {
        Vec mw2 = M * w;
        for (int i = 0; i < m; ++i) w -= basis[i].dot(mw2) * basis[i];
      }
      mw = M * w;
      b = std::sqrt(std::max(0.0, real_part<Scalar>(Scalar(w.dot(mw)))));
      if (b < 1e-13) throw SolverError("Lanczos basis exhausted");
      // the recurrence link is broken by the restart; a zero coupling keeps
      // T block diagonal
      beta.push_back(0.0);
    } else {
      beta.push_back(b);
    }
    basis.push_back(w / b);
    mbasis.push_back(mw / b);
  }

  if (res.values.size() == 0)
    throw SolverError("Lanczos did not converge");

  // final M-orthonormalization sweep (modified Gram-Schmidt)
  for (int j = 0; j < res.vectors.cols(); ++j) {
    Vec x = res.vectors.col(j);
    for (int i = 0; i < j; ++i) {
      Vec mx = M * x;
      x -= res.vectors.col(i).dot(mx) * res.vectors.col(i);
    }
    Vec mx = M * x;
    double nx = std::sqrt(std::abs(real_part<Scalar>(Scalar(x.dot(mx)))));
    res.vectors.col(j) = x / nx;
  }
  res.residuals = residual_norms(K, M, res.vectors, res.values);
  return res;
}

template GevpResult<double> solve_gevp_smallest<double>(const SpMatT<double>&,
                                                        const SpMatT<double>&,
                                                        GevpOptions);
template GevpResult<std::complex<double>> solve_gevp_smallest<std::complex<double>>(
    const SpMatT<std::complex<double>>&, const SpMatT<std::complex<double>>&,
    GevpOptions);
template GevpResult<double> dense_gevp<double>(
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>&,
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>&, int);
template GevpResult<std::complex<double>> dense_gevp<std::complex<double>>(
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>&,
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>&,
    int);

// ---------------------------------------------------------------------------

struct Factorization::Impl {
  Eigen::SimplicialLDLT<SpMatT<double>> ldlt;
  Eigen::SparseLU<SpMatT<double>> lu;
  bool use_ldlt = false;
};

Factorization::Factorization(const SpMatT<double>& A) : impl_(new Impl) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("Factorization: matrix must be square");
  impl_->ldlt.compute(A);
  if (impl_->ldlt.info() == Eigen::Success) {
    // reject factorizations with a (near-)zero pivot; LDLT does not pivot
    // for stability, so fall back to LU in that case
    double dmin = std::numeric_limits<double>::max();
    double dmax = 0.0;
    auto D = impl_->ldlt.vectorD();
    for (int i = 0; i < D.size(); ++i) {
      dmin = std::min(dmin, std::abs(D[i]));
      dmax = std::max(dmax, std::abs(D[i]));
    }
    if (dmin > 1e-14 * std::max(dmax, 1.0)) {
      impl_->use_ldlt = true;
      return;
    }
  }
  SpMatT<double> Ac = A;
  Ac.makeCompressed();
  impl_->lu.analyzePattern(Ac);
  impl_->lu.factorize(Ac);
  if (impl_->lu.info() != Eigen::Success)
    throw SolverError("factorize: matrix is singular");
}

Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd x =
      impl_->use_ldlt ? impl_->ldlt.solve(b).eval() : impl_->lu.solve(b).eval();
  if ((impl_->use_ldlt ? impl_->ldlt.info() : impl_->lu.info()) != Eigen::Success)
    throw SolverError("solve: back substitution failed");
  return x;
}

}  // namespace wg
