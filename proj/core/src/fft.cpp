#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace slowlight::detail {
namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
};

// The FFTW planner is not re-entrant; executing an existing plan on fresh
// arrays of the same alignment is. Plans are created once per (n, sign) and
// kept for the lifetime of the process.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    FftwBuffer in(n), out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data,
                                      sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    if (plan == nullptr) throw std::runtime_error("fftw: planner failed");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void dft(std::span<const Complex> in, std::span<Complex> out, int sign) {
  const std::size_t n = in.size();
  if (out.size() != n) throw std::invalid_argument("dft: size mismatch");
  if (n == 0) return;
  fftw_plan plan = plan_cache().get(n, sign);
  FftwBuffer a(n), b(n);
  std::copy(in.begin(), in.end(), reinterpret_cast<Complex*>(a.data));
  fftw_execute_dft(plan, a.data, b.data);
  const auto* result = reinterpret_cast<const Complex*>(b.data);
  std::copy(result, result + n, out.begin());
}

}  // namespace slowlight::detail
