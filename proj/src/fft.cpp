#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>

#include "rotgpe/field.hpp"

namespace rotgpe::detail {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

std::mutex plan_mutex;

int thread_count() {
  const char* env = std::getenv("ROTGPE_THREADS");
  if (!env) return 1;
  const int t = std::atoi(env);
  return t > 0 ? t : 1;
}

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  static bool threads_ready = false;
  std::lock_guard<std::mutex> lock(plan_mutex);
  if (!threads_ready) {
    fftw_init_threads();
    fftw_plan_with_nthreads(thread_count());
    threads_ready = true;
  }
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(static_cast<std::size_t>(n) * n), b(a.size());
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  Plans p;
  p.forward = fftw_plan_dft_2d(n, n, pa, pb, FFTW_FORWARD, flags);
  p.inverse = fftw_plan_dft_2d(n, n, pa, pb, FFTW_BACKWARD, flags);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void fft_forward(const GridSpec& g, const cplx* in, cplx* out) {
  const Plans& p = plans_for(g.n);
  std::vector<cplx> tmp(in, in + g.size());
  fftw_execute_dft(p.forward, reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(out));
}

void fft_inverse(const GridSpec& g, const cplx* in, cplx* out) {
  const Plans& p = plans_for(g.n);
  std::vector<cplx> tmp(in, in + g.size());
  fftw_execute_dft(p.inverse, reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(out));
  const double s = 1.0 / static_cast<double>(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out[k] *= s;
}

}  // namespace rotgpe::detail
