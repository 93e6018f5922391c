#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace choq::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanCache {
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans;

  ~PlanCache() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(const std::vector<int>& dims, int sign,
                std::complex<double>* in, std::complex<double>* out) {
    const auto key = std::make_pair(dims, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE keeps planning deterministic (no runtime measurement);
    // FFTW_UNALIGNED allows execution on arbitrarily aligned vectors.
    fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()),
                                dims.data(),
                                reinterpret_cast<fftw_complex*>(in),
                                reinterpret_cast<fftw_complex*>(out),
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw: plan creation failed");
    plans.emplace(key, p);
    return p;
  }
};

}  // namespace

void dft(const std::vector<int>& dims, const std::complex<double>* in,
         std::complex<double>* out, int sign) {
  thread_local PlanCache cache;
  // the plan is creation-buffer agnostic (FFTW_UNALIGNED), new-array execute
  fftw_plan p = cache.get(dims, sign, const_cast<std::complex<double>*>(in), out);
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace choq::detail
