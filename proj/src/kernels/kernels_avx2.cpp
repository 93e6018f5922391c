// AVX2 backend. Compiled with -mavx2 only (no -mfma): multiplies and adds
// stay separate instructions, so results match the scalar reference bit for
// bit. Reductions keep the same four-lane accumulation order as the scalar
// backend. General-exponent power maps use the identical libm loop.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cassert>
#include <cmath>

#include "kernels_table.hpp"

namespace choq::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}

// (l0+l1)+(l2+l3), matching the scalar lane merge
inline double reduce_add(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s01 = _mm_hadd_pd(lo, lo);
  const __m128d s23 = _mm_hadd_pd(hi, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s01, s23));
}

void k_fill(double* out, std::size_t n, double v) {
  const __m256d vv = _mm256_set1_pd(v);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, vv);
  for (; i < n; ++i) out[i] = v;
}

void k_copy(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_loadu_pd(in + i));
  for (; i < n; ++i) out[i] = in[i];
}

void k_add(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void k_sub(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void k_mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void k_scale(const double* a, double s, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  for (; i < n; ++i) out[i] = a[i] * s;
}

void k_axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double k_sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t nb = n - n % kLanes;
  for (std::size_t i = 0; i < nb; i += kLanes)
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double s = reduce_add(acc);
  for (std::size_t i = nb; i < n; ++i) s += a[i];
  return s;
}

double k_dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t nb = n - n % kLanes;
  for (std::size_t i = 0; i < nb; i += kLanes) {
    const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, t);
  }
  double s = reduce_add(acc);
  for (std::size_t i = nb; i < n; ++i) s += a[i] * b[i];
  return s;
}

double k_max_value(const double* a, std::size_t n) {
  assert(n > 0);
  double m = a[0];
  std::size_t i = 1;
  if (n >= kLanes + 1) {
    __m256d vm = _mm256_loadu_pd(a);
    for (i = kLanes; i + kLanes <= n; i += kLanes)
      vm = _mm256_max_pd(vm, _mm256_loadu_pd(a + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vm);
    m = lane[0];
    for (int j = 1; j < 4; ++j) m = lane[j] > m ? lane[j] : m;
  }
  for (; i < n; ++i) m = a[i] > m ? a[i] : m;
  return m;
}

double k_min_value(const double* a, std::size_t n) {
  assert(n > 0);
  double m = a[0];
  std::size_t i = 1;
  if (n >= kLanes + 1) {
    __m256d vm = _mm256_loadu_pd(a);
    for (i = kLanes; i + kLanes <= n; i += kLanes)
      vm = _mm256_min_pd(vm, _mm256_loadu_pd(a + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vm);
    m = lane[0];
    for (int j = 1; j < 4; ++j) m = lane[j] < m ? lane[j] : m;
  }
  for (; i < n; ++i) m = a[i] < m ? a[i] : m;
  return m;
}

double k_max_abs(const double* a, std::size_t n) {
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    vm = _mm256_max_pd(vm, abs_pd(_mm256_loadu_pd(a + i)));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, vm);
  double m = lane[0];
  for (int j = 1; j < 4; ++j) m = lane[j] > m ? lane[j] : m;
  for (; i < n; ++i) {
    const double v = std::fabs(a[i]);
    m = v > m ? v : m;
  }
  return m;
}

void k_positive_part(const double* a, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(a + i), zero));
  for (; i < n; ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
}

void k_negative_part(const double* a, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(a + i), zero));
  for (; i < n; ++i) out[i] = a[i] < 0.0 ? a[i] : 0.0;
}

void k_abs_pow(const double* a, double p, double* out, std::size_t n) {
  std::size_t i = 0;
  if (p == 1.0) {
    for (; i + kLanes <= n; i += kLanes)
      _mm256_storeu_pd(out + i, abs_pd(_mm256_loadu_pd(a + i)));
    for (; i < n; ++i) out[i] = std::fabs(a[i]);
  } else if (p == 2.0) {
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d v = _mm256_loadu_pd(a + i);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(v, v));
    }
    for (; i < n; ++i) out[i] = a[i] * a[i];
  } else if (p == 3.0) {
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d v = _mm256_loadu_pd(a + i);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(abs_pd(v), _mm256_mul_pd(v, v)));
    }
    for (; i < n; ++i) out[i] = std::fabs(a[i]) * (a[i] * a[i]);
  } else if (p == 4.0) {
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d v = _mm256_loadu_pd(a + i);
      const __m256d s = _mm256_mul_pd(v, v);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(s, s));
    }
    for (; i < n; ++i) {
      const double s = a[i] * a[i];
      out[i] = s * s;
    }
  } else {
    // libm path, identical to the scalar backend
    for (; i < n; ++i) out[i] = std::pow(std::fabs(a[i]), p);
  }
}

void k_signed_pow(const double* a, double p, double* out, std::size_t n) {
  std::size_t i = 0;
  if (p == 2.0) {
    k_copy(a, out, n);
  } else if (p == 3.0) {
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d v = _mm256_loadu_pd(a + i);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(abs_pd(v), v));
    }
    for (; i < n; ++i) out[i] = std::fabs(a[i]) * a[i];
  } else if (p == 4.0) {
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d v = _mm256_loadu_pd(a + i);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(v, v), v));
    }
    for (; i < n; ++i) out[i] = (a[i] * a[i]) * a[i];
  } else {
    for (; i < n; ++i) out[i] = std::pow(std::fabs(a[i]), p - 2.0) * a[i];
  }
}

void k_mul_complex(const std::complex<double>* a, const std::complex<double>* b,
                   std::complex<double>* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  // two complex values per 256-bit vector
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d br = _mm256_movedup_pd(vb);              // [br0 br0 br1 br1]
    const __m256d bi = _mm256_permute_pd(vb, 0xF);         // [bi0 bi0 bi1 bi1]
    const __m256d t1 = _mm256_mul_pd(va, br);              // [ar*br  ai*br ...]
    const __m256d aswap = _mm256_permute_pd(va, 0x5);      // [ai0 ar0 ai1 ar1]
    const __m256d t2 = _mm256_mul_pd(aswap, bi);           // [ai*bi  ar*bi ...]
    _mm256_storeu_pd(po + 2 * i, _mm256_addsub_pd(t1, t2));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {(ar * br) - (ai * bi), (ai * br) + (ar * bi)};
  }
}

void k_scale_complex(std::complex<double>* a, const double* s, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d s2 = _mm_loadu_pd(s + i);
    const __m256d s4 = _mm256_permute4x64_pd(_mm256_castpd128_pd256(s2), 0x50);
    _mm256_storeu_pd(pa + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(pa + 2 * i), s4));
  }
  for (; i < n; ++i) a[i] = {a[i].real() * s[i], a[i].imag() * s[i]};
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {
      k_fill,         k_copy,          k_add,     k_sub,
      k_mul,          k_scale,         k_axpy,    k_sum,
      k_dot,          k_max_value,     k_min_value, k_max_abs,
      k_positive_part, k_negative_part, k_abs_pow, k_signed_pow,
      k_mul_complex,  k_scale_complex,
  };
  return t;
}

}  // namespace choq::kernels::detail

#endif  // x86_64
