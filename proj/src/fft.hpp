#pragma once

// Thin FFTW3 wrapper: unnormalized c2c transforms with a thread-local plan
// cache. Plan creation/destruction is serialized behind a global mutex
// (the FFTW planner is not thread safe); execution is concurrent.

#include <complex>
#include <vector>

namespace choq::detail {

// sign < 0: forward (e^{-2 pi i ...}), sign > 0: backward, both unnormalized.
// in and out must be distinct buffers of size prod(dims).
void dft(const std::vector<int>& dims, const std::complex<double>* in,
         std::complex<double>* out, int sign);

}  // namespace choq::detail
