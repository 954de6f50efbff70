#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops used by the eigensolvers. Every kernel exists in
// a scalar reference version and (on x86-64) an AVX2+FMA version compiled in
// its own translation unit; the active set is picked once at startup from
// CPUID, overridable with WGSPEC_SIMD=scalar|avx2. The two variants may
// reassociate sums, so results agree to rounding, not bitwise; the
// equivalence tests pin the tolerance.

namespace wg::kernels {

using cplx = std::complex<double>;

struct Ops {
  // BLAS-1 style
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*nrm2sq)(const double* x, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*axpby)(double a, const double* x, double b, double* y, std::size_t n);
  void (*scale)(double a, double* x, std::size_t n);
  // z = a*u + b*v and z = a*u + b*v + c*w (tridiagonal column combines)
  void (*combine2)(double* z, double a, const double* u, double b,
                   const double* v, std::size_t n);
  void (*combine3)(double* z, double a, const double* u, double b,
                   const double* v, double c, const double* w, std::size_t n);
  // y (+)= A x for CSR A
  void (*csr_spmv)(const int* rowptr, const int* col, const double* val,
                   int nrows, const double* x, double* y, bool accumulate);
  // C = X^T Y, all column-major: X is n-by-kx (leading dim n), Y n-by-ky,
  // C kx-by-ky with leading dimension ldc.
  void (*gram)(const double* X, int kx, const double* Y, int ky, std::size_t n,
               double* C, int ldc);
  // Y += X B, X n-by-kx, B kx-by-ky column-major with leading dim ldb.
  void (*gemm_tall)(const double* X, int kx, const double* B, int ldb,
                    double* Y, int ky, std::size_t n);
  // complex (Hermitian Lanczos)
  cplx (*zdotc)(const cplx* x, const cplx* y, std::size_t n);
  void (*zaxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
};

namespace scalar {
extern const Ops ops;
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const Ops ops;  // only safe to call when avx2_supported()
}
#endif

bool avx2_supported();

// Active dispatch table (selected once, thread-safe).
const Ops& ops();
std::string active_isa_name();

}  // namespace wg::kernels
