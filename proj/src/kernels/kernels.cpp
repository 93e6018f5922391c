#include "choq/kernels.hpp"

#include <cassert>
#include <stdexcept>

#include "kernels_table.hpp"

namespace choq::kernels {
namespace {

using detail::KernelTable;

const KernelTable* detect_table() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return &detail::avx2_table();
  return &detail::scalar_table();
#elif defined(__aarch64__)
  return &detail::neon_table();
#else
  return &detail::scalar_table();
#endif
}

struct ActiveBackend {
  const KernelTable* table;
  Backend which;
};

ActiveBackend& active() {
  static ActiveBackend a = [] {
    const KernelTable* t = detect_table();
    Backend b = Backend::scalar;
    if (t != &detail::scalar_table()) {
#if defined(__aarch64__)
      b = Backend::neon;
#else
      b = Backend::avx2;
#endif
    }
    return ActiveBackend{t, b};
  }();
  return a;
}

}  // namespace

void set_backend(Backend b) {
  switch (b) {
    case Backend::auto_detect: {
      const KernelTable* t = detect_table();
      Backend which = Backend::scalar;
      if (t != &detail::scalar_table()) {
#if defined(__aarch64__)
        which = Backend::neon;
#else
        which = Backend::avx2;
#endif
      }
      active() = ActiveBackend{t, which};
      break;
    }
    case Backend::scalar:
      active() = ActiveBackend{&detail::scalar_table(), Backend::scalar};
      break;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (!__builtin_cpu_supports("avx2"))
        throw std::runtime_error("kernels: avx2 not supported on this CPU");
      active() = ActiveBackend{&detail::avx2_table(), Backend::avx2};
#else
      throw std::runtime_error("kernels: avx2 backend requires x86-64");
#endif
      break;
    case Backend::neon:
#if defined(__aarch64__)
      active() = ActiveBackend{&detail::neon_table(), Backend::neon};
#else
      throw std::runtime_error("kernels: neon backend requires aarch64");
#endif
      break;
  }
}

Backend active_backend() { return active().which; }

std::string_view backend_name() {
  switch (active().which) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    default: return "auto";
  }
}

void fill(std::span<double> out, double value) {
  active().table->fill(out.data(), out.size(), value);
}

void copy(std::span<const double> in, std::span<double> out) {
  assert(in.size() == out.size());
  active().table->copy(in.data(), out.data(), in.size());
}

void add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().table->add(a.data(), b.data(), out.data(), a.size());
}

void sub(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().table->sub(a.data(), b.data(), out.data(), a.size());
}

void mul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().table->mul(a.data(), b.data(), out.data(), a.size());
}

void scale(std::span<const double> a, double s, std::span<double> out) {
  assert(a.size() == out.size());
  active().table->scale(a.data(), s, out.data(), a.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().table->axpy(a, x.data(), y.data(), x.size());
}

double sum(std::span<const double> a) { return active().table->sum(a.data(), a.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().table->dot(a.data(), b.data(), a.size());
}

double max_value(std::span<const double> a) {
  return active().table->max_value(a.data(), a.size());
}

double min_value(std::span<const double> a) {
  return active().table->min_value(a.data(), a.size());
}

double max_abs(std::span<const double> a) {
  return active().table->max_abs(a.data(), a.size());
}

void positive_part(std::span<const double> a, std::span<double> out) {
  assert(a.size() == out.size());
  active().table->positive_part(a.data(), out.data(), a.size());
}

void negative_part(std::span<const double> a, std::span<double> out) {
  assert(a.size() == out.size());
  active().table->negative_part(a.data(), out.data(), a.size());
}

void abs_pow(std::span<const double> a, double p, std::span<double> out) {
  assert(a.size() == out.size());
  assert(p > 0.0);
  active().table->abs_pow(a.data(), p, out.data(), a.size());
}

void signed_pow(std::span<const double> a, double p, std::span<double> out) {
  assert(a.size() == out.size());
  assert(p >= 2.0);
  active().table->signed_pow(a.data(), p, out.data(), a.size());
}

void mul_complex(std::span<const std::complex<double>> a,
                 std::span<const std::complex<double>> b,
                 std::span<std::complex<double>> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().table->mul_complex(a.data(), b.data(), out.data(), a.size());
}

void scale_complex(std::span<std::complex<double>> a, std::span<const double> s) {
  assert(a.size() == s.size());
  active().table->scale_complex(a.data(), s.data(), a.size());
}

}  // namespace choq::kernels
