#include "wgspec/kernels.hpp"

namespace wg::kernels::scalar {

namespace {

double dot_(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2sq_(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void axpy_(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby_(double a, const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scale_(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void combine2_(double* z, double a, const double* u, double b, const double* v,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = a * u[i] + b * v[i];
}

void combine3_(double* z, double a, const double* u, double b, const double* v,
               double c, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = a * u[i] + b * v[i] + c * w[i];
}

void csr_spmv_(const int* rowptr, const int* col, const double* val, int nrows,
               const double* x, double* y, bool accumulate) {
  for (int r = 0; r < nrows; ++r) {
    double s = 0.0;
    for (int p = rowptr[r]; p < rowptr[r + 1]; ++p) s += val[p] * x[col[p]];
    y[r] = accumulate ? y[r] + s : s;
  }
}

void gram_(const double* X, int kx, const double* Y, int ky, std::size_t n,
           double* C, int ldc) {
  for (int j = 0; j < ky; ++j)
    for (int i = 0; i < kx; ++i) C[i + static_cast<std::size_t>(ldc) * j] = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (int j = 0; j < ky; ++j) {
      const double yj = Y[r + n * static_cast<std::size_t>(j)];
      for (int i = 0; i < kx; ++i)
        C[i + static_cast<std::size_t>(ldc) * j] +=
            X[r + n * static_cast<std::size_t>(i)] * yj;
    }
  }
}

void gemm_tall_(const double* X, int kx, const double* B, int ldb, double* Y,
                int ky, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) {
    for (int j = 0; j < ky; ++j) {
      double s = Y[r + n * static_cast<std::size_t>(j)];
      for (int i = 0; i < kx; ++i)
        s += X[r + n * static_cast<std::size_t>(i)] *
             B[i + static_cast<std::size_t>(ldb) * j];
      Y[r + n * static_cast<std::size_t>(j)] = s;
    }
  }
}

cplx zdotc_(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void zaxpy_(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops ops = {dot_,      nrm2sq_,   axpy_, axpby_,     scale_, combine2_,
                 combine3_, csr_spmv_, gram_, gemm_tall_, zdotc_, zaxpy_};

}  // namespace wg::kernels::scalar
