#include "qtsolve/fft.hpp"

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace qtsolve {

namespace {

std::mutex& planning_mutex() {
  static std::mutex m;
  return m;
}

// Per-thread scratch buffers, one pair per transform size.  fftw_malloc keeps
// the alignment class identical to the buffers the plans were created on, as
// new-array execution requires.
class ScratchPool {
 public:
  ~ScratchPool() {
    for (auto& [n, bufs] : pool_) {
      fftw_free(bufs.first);
      fftw_free(bufs.second);
    }
  }

  std::pair<fftw_complex*, fftw_complex*> get(std::size_t n) {
    auto it = pool_.find(n);
    if (it == pool_.end()) {
      auto* a = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
      auto* b = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
      if (a == nullptr || b == nullptr) throw std::bad_alloc();
      it = pool_.emplace(n, std::make_pair(a, b)).first;
    }
    return it->second;
  }

 private:
  std::map<std::size_t, std::pair<fftw_complex*, fftw_complex*>> pool_;
};

thread_local ScratchPool scratch_pool;

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Fft: size must be positive");
  std::lock_guard<std::mutex> lock(planning_mutex());
  auto* a = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* b = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  plan_minus_ = fftw_plan_dft_1d(static_cast<int>(n), a, b, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_plus_ = fftw_plan_dft_1d(static_cast<int>(n), a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(a);
  fftw_free(b);
  if (plan_minus_ == nullptr || plan_plus_ == nullptr)
    throw std::runtime_error("Fft: planning failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planning_mutex());
  if (plan_minus_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_minus_));
  if (plan_plus_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_plus_));
}

std::shared_ptr<const Fft> Fft::plan(std::size_t n) {
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::weak_ptr<const Fft>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (auto existing = cache[n].lock()) return existing;
  std::shared_ptr<const Fft> fresh(new Fft(n));
  cache[n] = fresh;
  return fresh;
}

namespace {

void execute(void* plan, std::size_t n, const C01* in, C01* out) {
  auto [a, b] = scratch_pool.get(n);
  std::memcpy(static_cast<void*>(a), static_cast<const void*>(in), sizeof(C01) * n);
  fftw_execute_dft(static_cast<fftw_plan>(plan), a, b);
  std::memcpy(static_cast<void*>(out), static_cast<const void*>(b), sizeof(C01) * n);
}

}  // namespace

void Fft::dft_minus(const C01* in, C01* out) const { execute(plan_minus_, n_, in, out); }
void Fft::dft_plus(const C01* in, C01* out) const { execute(plan_plus_, n_, in, out); }

std::vector<C01> Fft::dft_minus(const std::vector<C01>& in) const {
  if (in.size() != n_) throw std::invalid_argument("Fft::dft_minus: length mismatch");
  std::vector<C01> out(n_);
  dft_minus(in.data(), out.data());
  return out;
}

std::vector<C01> Fft::dft_plus(const std::vector<C01>& in) const {
  if (in.size() != n_) throw std::invalid_argument("Fft::dft_plus: length mismatch");
  std::vector<C01> out(n_);
  dft_plus(in.data(), out.data());
  return out;
}

}  // namespace qtsolve
