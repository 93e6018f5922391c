// NEON backend for aarch64. float64x2 is 2-wide, so reductions keep two
// vector accumulators covering lanes {0,1} and {2,3}; the merge order
// (l0+l1)+(l2+l3) then matches the scalar reference exactly. Multiplies and
// adds are kept as separate intrinsics (no FMLA) for bitwise equality.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cassert>
#include <cmath>

#include "kernels_table.hpp"

namespace choq::kernels::detail {
namespace {

void k_fill(double* out, std::size_t n, double v) {
  const float64x2_t vv = vdupq_n_f64(v);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vv);
  for (; i < n; ++i) out[i] = v;
}

void k_copy(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vld1q_f64(in + i));
  for (; i < n; ++i) out[i] = in[i];
}

void k_add(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void k_sub(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void k_mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void k_scale(const double* a, double s, double* out, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vs));
  for (; i < n; ++i) out[i] = a[i] * s;
}

void k_axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t t = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), t));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double k_sum(const double* a, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const std::size_t nb = n - n % 4;
  for (std::size_t i = 0; i < nb; i += 4) {
    acc01 = vaddq_f64(acc01, vld1q_f64(a + i));
    acc23 = vaddq_f64(acc23, vld1q_f64(a + i + 2));
  }
  double s = vpaddd_f64(acc01) + vpaddd_f64(acc23);
  for (std::size_t i = nb; i < n; ++i) s += a[i];
  return s;
}

double k_dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const std::size_t nb = n - n % 4;
  for (std::size_t i = 0; i < nb; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double s = vpaddd_f64(acc01) + vpaddd_f64(acc23);
  for (std::size_t i = nb; i < n; ++i) s += a[i] * b[i];
  return s;
}

double k_max_value(const double* a, std::size_t n) {
  assert(n > 0);
  double m = a[0];
  std::size_t i = 1;
  if (n >= 3) {
    float64x2_t vm = vld1q_f64(a);
    for (i = 2; i + 2 <= n; i += 2) vm = vmaxq_f64(vm, vld1q_f64(a + i));
    m = vmaxvq_f64(vm);
  }
  for (; i < n; ++i) m = a[i] > m ? a[i] : m;
  return m;
}

double k_min_value(const double* a, std::size_t n) {
  assert(n > 0);
  double m = a[0];
  std::size_t i = 1;
  if (n >= 3) {
    float64x2_t vm = vld1q_f64(a);
    for (i = 2; i + 2 <= n; i += 2) vm = vminq_f64(vm, vld1q_f64(a + i));
    m = vminvq_f64(vm);
  }
  for (; i < n; ++i) m = a[i] < m ? a[i] : m;
  return m;
}

double k_max_abs(const double* a, std::size_t n) {
  float64x2_t vm = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vm = vmaxq_f64(vm, vabsq_f64(vld1q_f64(a + i)));
  double m = vmaxvq_f64(vm);
  for (; i < n; ++i) {
    const double v = std::fabs(a[i]);
    m = v > m ? v : m;
  }
  return m;
}

void k_positive_part(const double* a, double* out, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmaxq_f64(vld1q_f64(a + i), zero));
  for (; i < n; ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
}

void k_negative_part(const double* a, double* out, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vminq_f64(vld1q_f64(a + i), zero));
  for (; i < n; ++i) out[i] = a[i] < 0.0 ? a[i] : 0.0;
}

void k_abs_pow(const double* a, double p, double* out, std::size_t n) {
  std::size_t i = 0;
  if (p == 1.0) {
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vabsq_f64(vld1q_f64(a + i)));
    for (; i < n; ++i) out[i] = std::fabs(a[i]);
  } else if (p == 2.0) {
    for (; i + 2 <= n; i += 2) {
      const float64x2_t v = vld1q_f64(a + i);
      vst1q_f64(out + i, vmulq_f64(v, v));
    }
    for (; i < n; ++i) out[i] = a[i] * a[i];
  } else if (p == 3.0) {
    for (; i + 2 <= n; i += 2) {
      const float64x2_t v = vld1q_f64(a + i);
      vst1q_f64(out + i, vmulq_f64(vabsq_f64(v), vmulq_f64(v, v)));
    }
    for (; i < n; ++i) out[i] = std::fabs(a[i]) * (a[i] * a[i]);
  } else if (p == 4.0) {
    for (; i + 2 <= n; i += 2) {
      const float64x2_t v = vld1q_f64(a + i);
      const float64x2_t s = vmulq_f64(v, v);
      vst1q_f64(out + i, vmulq_f64(s, s));
    }
    for (; i < n; ++i) {
      const double s = a[i] * a[i];
      out[i] = s * s;
    }
  } else {
    for (; i < n; ++i) out[i] = std::pow(std::fabs(a[i]), p);
  }
}

void k_signed_pow(const double* a, double p, double* out, std::size_t n) {
  std::size_t i = 0;
  if (p == 2.0) {
    k_copy(a, out, n);
  } else if (p == 3.0) {
    for (; i + 2 <= n; i += 2) {
      const float64x2_t v = vld1q_f64(a + i);
      vst1q_f64(out + i, vmulq_f64(vabsq_f64(v), v));
    }
    for (; i < n; ++i) out[i] = std::fabs(a[i]) * a[i];
  } else if (p == 4.0) {
    for (; i + 2 <= n; i += 2) {
      const float64x2_t v = vld1q_f64(a + i);
      vst1q_f64(out + i, vmulq_f64(vmulq_f64(v, v), v));
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
  const uint64x2_t signlo = {0x8000000000000000ULL, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = vld1q_f64(pa + 2 * i);
    const float64x2_t vb = vld1q_f64(pb + 2 * i);
    const float64x2_t t1 = vmulq_f64(va, vdupq_laneq_f64(vb, 0));   // [ar*br ai*br]
    const float64x2_t aswap = vextq_f64(va, va, 1);                 // [ai ar]
    float64x2_t t2 = vmulq_f64(aswap, vdupq_laneq_f64(vb, 1));      // [ai*bi ar*bi]
    t2 = vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(t2), signlo));
    vst1q_f64(po + 2 * i, vaddq_f64(t1, t2));
  }
}

void k_scale_complex(std::complex<double>* a, const double* s, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(pa + 2 * i, vmulq_f64(vld1q_f64(pa + 2 * i), vdupq_n_f64(s[i])));
}

}  // namespace

const KernelTable& neon_table() {
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

#endif  // __aarch64__
