#include "rootbar/kernels.hpp"

namespace rootbar::kernels::scalar {

void heat_obstacle_row(const double* u, const double* obstacle, double* out,
                       std::size_t n, double coef) {
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double lap = u[j + 1] - 2.0 * u[j] + u[j - 1];
    const double cand = u[j] + coef * lap;
    out[j] = cand > obstacle[j] ? cand : obstacle[j];
  }
}

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
}  // namespace

static inline void philox_block(std::uint32_t c0, std::uint32_t c1,
                                std::uint32_t c2, std::uint32_t c3,
                                std::uint32_t k0, std::uint32_t k1,
                                std::uint32_t out[4]) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t n0 = hi1 ^ c1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c3 ^ k1;
    const std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  out[0] = c0;
  out[1] = c1;
  out[2] = c2;
  out[3] = c3;
}

void philox4x32_seq(std::uint64_t ctr01, std::uint32_t c2, std::uint32_t c3,
                    const std::uint32_t key[2], std::uint32_t* out,
                    std::size_t nblocks) {
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::uint64_t c = ctr01 + b;
    philox_block(static_cast<std::uint32_t>(c),
                 static_cast<std::uint32_t>(c >> 32), c2, c3, key[0], key[1],
                 out + 4 * b);
  }
}

}  // namespace rootbar::kernels::scalar

namespace rootbar::kernels {

void philox4x32(const std::uint32_t ctr[4], const std::uint32_t key[2],
                std::uint32_t out[4]) {
  scalar::philox_block(ctr[0], ctr[1], ctr[2], ctr[3], key[0], key[1], out);
}

}  // namespace rootbar::kernels
