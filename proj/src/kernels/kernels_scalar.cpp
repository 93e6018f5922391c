// Scalar reference backend. This is the semantics definition: every other
// backend must reproduce these results bit for bit. Reductions use four
// accumulator lanes (lane = i mod 4) merged as (l0+l1)+(l2+l3) so that a
// 4-wide vector backend can match the rounding sequence exactly.

#include <cassert>
#include <cmath>

#include "kernels_table.hpp"

namespace choq::kernels::detail {
namespace {

void k_fill(double* out, std::size_t n, double v) {
  for (std::size_t i = 0; i < n; ++i) out[i] = v;
}

void k_copy(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i];
}

void k_add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void k_sub(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void k_mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void k_scale(const double* a, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * s;
}

void k_axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

double k_sum(const double* a, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t nb = n - n % 4;
  for (std::size_t i = 0; i < nb; i += 4) {
    l0 += a[i];
    l1 += a[i + 1];
    l2 += a[i + 2];
    l3 += a[i + 3];
  }
  double s = (l0 + l1) + (l2 + l3);
  for (std::size_t i = nb; i < n; ++i) s += a[i];
  return s;
}

double k_dot(const double* a, const double* b, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t nb = n - n % 4;
  for (std::size_t i = 0; i < nb; i += 4) {
    l0 += a[i] * b[i];
    l1 += a[i + 1] * b[i + 1];
    l2 += a[i + 2] * b[i + 2];
    l3 += a[i + 3] * b[i + 3];
  }
  double s = (l0 + l1) + (l2 + l3);
  for (std::size_t i = nb; i < n; ++i) s += a[i] * b[i];
  return s;
}

double k_max_value(const double* a, std::size_t n) {
  assert(n > 0);
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i) m = a[i] > m ? a[i] : m;
  return m;
}

double k_min_value(const double* a, std::size_t n) {
  assert(n > 0);
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i) m = a[i] < m ? a[i] : m;
  return m;
}

double k_max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(a[i]);
    m = v > m ? v : m;
  }
  return m;
}

void k_positive_part(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
}

void k_negative_part(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] < 0.0 ? a[i] : 0.0;
}

void k_abs_pow(const double* a, double p, double* out, std::size_t n) {
  if (p == 1.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i]);
  } else if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * a[i];
  } else if (p == 3.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i]) * (a[i] * a[i]);
  } else if (p == 4.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double s = a[i] * a[i];
      out[i] = s * s;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(std::fabs(a[i]), p);
  }
}

void k_signed_pow(const double* a, double p, double* out, std::size_t n) {
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i];
  } else if (p == 3.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i]) * a[i];
  } else if (p == 4.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] * a[i]) * a[i];
  } else {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = std::pow(std::fabs(a[i]), p - 2.0) * a[i];
  }
}

void k_mul_complex(const std::complex<double>* a, const std::complex<double>* b,
                   std::complex<double>* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {(ar * br) - (ai * bi), (ai * br) + (ar * bi)};
  }
}

void k_scale_complex(std::complex<double>* a, const double* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    a[i] = {a[i].real() * s[i], a[i].imag() * s[i]};
}

}  // namespace

const KernelTable& scalar_table() {
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
