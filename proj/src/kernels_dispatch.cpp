#include "rootbar/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace rootbar::kernels {

namespace {

std::atomic<Backend> g_requested{Backend::autodetect};

Backend resolve() {
  Backend req = g_requested.load(std::memory_order_relaxed);
  if (req == Backend::autodetect) {
    if (const char* env = std::getenv("ROOTBAR_SIMD")) {
      if (std::strcmp(env, "scalar") == 0) req = Backend::scalar;
      else if (std::strcmp(env, "avx2") == 0) req = Backend::avx2;
    }
  }
  if (req == Backend::avx2 && !avx2::available()) req = Backend::scalar;
  if (req == Backend::autodetect)
    req = avx2::available() ? Backend::avx2 : Backend::scalar;
  return req;
}

}  // namespace

void set_backend(Backend b) { g_requested.store(b, std::memory_order_relaxed); }

Backend active_backend() { return resolve(); }

const char* backend_name() {
  return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

void heat_obstacle_row(const double* u, const double* obstacle, double* out,
                       std::size_t n, double coef) {
  if (active_backend() == Backend::avx2)
    avx2::heat_obstacle_row(u, obstacle, out, n, coef);
  else
    scalar::heat_obstacle_row(u, obstacle, out, n, coef);
}

void philox4x32_seq(std::uint64_t ctr01, std::uint32_t c2, std::uint32_t c3,
                    const std::uint32_t key[2], std::uint32_t* out,
                    std::size_t nblocks) {
  if (active_backend() == Backend::avx2)
    avx2::philox4x32_seq(ctr01, c2, c3, key, out, nblocks);
  else
    scalar::philox4x32_seq(ctr01, c2, c3, key, out, nblocks);
}

}  // namespace rootbar::kernels
