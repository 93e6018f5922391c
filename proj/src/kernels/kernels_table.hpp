#pragma once

// Private dispatch table shared by the kernel backends. Each backend fills a
// KernelTable with its function pointers; dispatch.cpp owns the active table.

#include <complex>
#include <cstddef>

namespace choq::kernels::detail {

struct KernelTable {
  void (*fill)(double*, std::size_t, double);
  void (*copy)(const double*, double*, std::size_t);
  void (*add)(const double*, const double*, double*, std::size_t);
  void (*sub)(const double*, const double*, double*, std::size_t);
  void (*mul)(const double*, const double*, double*, std::size_t);
  void (*scale)(const double*, double, double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*max_value)(const double*, std::size_t);
  double (*min_value)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*positive_part)(const double*, double*, std::size_t);
  void (*negative_part)(const double*, double*, std::size_t);
  void (*abs_pow)(const double*, double, double*, std::size_t);
  void (*signed_pow)(const double*, double, double*, std::size_t);
  void (*mul_complex)(const std::complex<double>*, const std::complex<double>*,
                      std::complex<double>*, std::size_t);
  void (*scale_complex)(std::complex<double>*, const double*, std::size_t);
};

const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();
#endif

}  // namespace choq::kernels::detail
