// AVX2+FMA kernel variants. This TU is compiled with -mavx2 -mfma and must
// only be entered after a CPUID check (see kernels.cpp).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "wgspec/kernels.hpp"

namespace wg::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4),
                         a1);
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2sq_(const double* x, std::size_t n) { return dot_(x, x, n); }

void axpy_(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(
        y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpby_(double a, const double* x, double b, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), t));
  }
  for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scale_(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void combine2_(double* z, double a, const double* u, double b, const double* v,
               std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(u + i));
    _mm256_storeu_pd(z + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(v + i), t));
  }
  for (; i < n; ++i) z[i] = a * u[i] + b * v[i];
}

void combine3_(double* z, double a, const double* u, double b, const double* v,
               double c, const double* w, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b),
                vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(u + i));
    t = _mm256_fmadd_pd(vb, _mm256_loadu_pd(v + i), t);
    _mm256_storeu_pd(z + i, _mm256_fmadd_pd(vc, _mm256_loadu_pd(w + i), t));
  }
  for (; i < n; ++i) z[i] = a * u[i] + b * v[i] + c * w[i];
}

void csr_spmv_(const int* rowptr, const int* col, const double* val, int nrows,
               const double* x, double* y, bool accumulate) {
  for (int r = 0; r < nrows; ++r) {
    int p = rowptr[r];
    const int pe = rowptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; p + 4 <= pe; p += 4) {
      __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + p));
      __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(val + p), xv, acc);
    }
    double s = hsum(acc);
    for (; p < pe; ++p) s += val[p] * x[col[p]];
    y[r] = accumulate ? y[r] + s : s;
  }
}

// Row-panel blocked so X and Y stream from RAM once; tiles run out of cache.
constexpr std::size_t kPanel = 4096;

void gram_(const double* X, int kx, const double* Y, int ky, std::size_t n,
           double* C, int ldc) {
  for (int j = 0; j < ky; ++j)
    for (int i = 0; i < kx; ++i) C[i + static_cast<std::size_t>(ldc) * j] = 0.0;
  for (std::size_t r0 = 0; r0 < n; r0 += kPanel) {
    const std::size_t r1 = (r0 + kPanel < n) ? r0 + kPanel : n;
    for (int j0 = 0; j0 < ky; j0 += 2) {
      const int jb = (j0 + 2 <= ky) ? 2 : 1;
      for (int i0 = 0; i0 < kx; i0 += 2) {
        const int ib = (i0 + 2 <= kx) ? 2 : 1;
        __m256d a00 = _mm256_setzero_pd(), a01 = _mm256_setzero_pd();
        __m256d a10 = _mm256_setzero_pd(), a11 = _mm256_setzero_pd();
        const double* x0 = X + n * static_cast<std::size_t>(i0);
        const double* x1 = X + n * static_cast<std::size_t>(i0 + (ib > 1));
        const double* y0 = Y + n * static_cast<std::size_t>(j0);
        const double* y1 = Y + n * static_cast<std::size_t>(j0 + (jb > 1));
        std::size_t r = r0;
        for (; r + 4 <= r1; r += 4) {
          __m256d vx0 = _mm256_loadu_pd(x0 + r);
          __m256d vx1 = _mm256_loadu_pd(x1 + r);
          __m256d vy0 = _mm256_loadu_pd(y0 + r);
          __m256d vy1 = _mm256_loadu_pd(y1 + r);
          a00 = _mm256_fmadd_pd(vx0, vy0, a00);
          a10 = _mm256_fmadd_pd(vx1, vy0, a10);
          a01 = _mm256_fmadd_pd(vx0, vy1, a01);
          a11 = _mm256_fmadd_pd(vx1, vy1, a11);
        }
        double s00 = hsum(a00), s10 = hsum(a10), s01 = hsum(a01),
               s11 = hsum(a11);
        for (; r < r1; ++r) {
          s00 += x0[r] * y0[r];
          s10 += x1[r] * y0[r];
          s01 += x0[r] * y1[r];
          s11 += x1[r] * y1[r];
        }
        C[i0 + static_cast<std::size_t>(ldc) * j0] += s00;
        if (ib > 1) C[i0 + 1 + static_cast<std::size_t>(ldc) * j0] += s10;
        if (jb > 1) C[i0 + static_cast<std::size_t>(ldc) * (j0 + 1)] += s01;
        if (ib > 1 && jb > 1)
          C[i0 + 1 + static_cast<std::size_t>(ldc) * (j0 + 1)] += s11;
      }
    }
  }
}

void gemm_tall_(const double* X, int kx, const double* B, int ldb, double* Y,
                int ky, std::size_t n) {
  for (std::size_t r0 = 0; r0 < n; r0 += kPanel) {
    const std::size_t r1 = (r0 + kPanel < n) ? r0 + kPanel : n;
    for (int j = 0; j < ky; ++j) {
      double* yj = Y + n * static_cast<std::size_t>(j);
      const double* bj = B + static_cast<std::size_t>(ldb) * j;
      std::size_t r = r0;
      for (; r + 8 <= r1; r += 8) {
        __m256d acc0 = _mm256_loadu_pd(yj + r);
        __m256d acc1 = _mm256_loadu_pd(yj + r + 4);
        for (int i = 0; i < kx; ++i) {
          const __m256d vb = _mm256_set1_pd(bj[i]);
          const double* xi = X + n * static_cast<std::size_t>(i);
          acc0 = _mm256_fmadd_pd(vb, _mm256_loadu_pd(xi + r), acc0);
          acc1 = _mm256_fmadd_pd(vb, _mm256_loadu_pd(xi + r + 4), acc1);
        }
        _mm256_storeu_pd(yj + r, acc0);
        _mm256_storeu_pd(yj + r + 4, acc1);
      }
      for (; r < r1; ++r) {
        double s = yj[r];
        for (int i = 0; i < kx; ++i)
          s += X[r + n * static_cast<std::size_t>(i)] * bj[i];
        yj[r] = s;
      }
    }
  }
}

cplx zdotc_(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  const __m256d signs = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
    __m256d vxs = _mm256_permute_pd(vx, 0b0101);  // swap re/im lanes
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(vxs, signs), vy, acc_im);
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void zaxpy_(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d var = _mm256_set1_pd(a.real());
  const __m256d vai = _mm256_set1_pd(a.imag());
  const __m256d signs = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    // a*x = ar*x + ai*(i*x); i*x swaps lanes and negates the new real lane
    __m256d vix = _mm256_mul_pd(_mm256_permute_pd(vx, 0b0101), signs);
    vy = _mm256_fmadd_pd(var, vx, vy);
    vy = _mm256_fmadd_pd(vai, vix, vy);
    _mm256_storeu_pd(yd + 2 * i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops ops = {dot_,      nrm2sq_,   axpy_, axpby_,     scale_, combine2_,
                 combine3_, csr_spmv_, gram_, gemm_tall_, zdotc_, zaxpy_};

}  // namespace wg::kernels::avx2

#endif  // x86-64
