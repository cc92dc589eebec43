#include "rootbar/kernels.hpp"

#if defined(ROOTBAR_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace rootbar::kernels::avx2 {

#if defined(ROOTBAR_HAVE_AVX2)

bool available() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

void heat_obstacle_row(const double* u, const double* obstacle, double* out,
                       std::size_t n, double coef) {
  if (n < 2) return;
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d cf = _mm256_set1_pd(coef);
  std::size_t j = 1;
  for (; j + 4 + 1 <= n; j += 4) {
    const __m256d um = _mm256_loadu_pd(u + j - 1);
    const __m256d uc = _mm256_loadu_pd(u + j);
    const __m256d up = _mm256_loadu_pd(u + j + 1);
    // same association as the scalar kernel: (u[j+1] - 2 u[j]) + u[j-1]
    const __m256d lap = _mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um);
    const __m256d cand = _mm256_add_pd(uc, _mm256_mul_pd(cf, lap));
    const __m256d ob = _mm256_loadu_pd(obstacle + j);
    _mm256_storeu_pd(out + j, _mm256_max_pd(cand, ob));
  }
  for (; j + 1 < n; ++j) {
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

// Four philox blocks at a time, one block per 64-bit lane.
void philox4x32_seq(std::uint64_t ctr01, std::uint32_t c2_init,
                    std::uint32_t c3_init, const std::uint32_t key[2],
                    std::uint32_t* out, std::size_t nblocks) {
  const __m256i mask32 = _mm256_set1_epi64x(0xFFFFFFFFll);
  const __m256i m0 = _mm256_set1_epi64x(kMul0);
  const __m256i m1 = _mm256_set1_epi64x(kMul1);
  const __m256i w0 = _mm256_set1_epi64x(kWeyl0);
  const __m256i w1 = _mm256_set1_epi64x(kWeyl1);

  std::size_t b = 0;
  for (; b + 4 <= nblocks; b += 4) {
    alignas(32) std::uint64_t c0s[4], c1s[4];
    for (int i = 0; i < 4; ++i) {
      const std::uint64_t c = ctr01 + b + static_cast<std::uint64_t>(i);
      c0s[i] = static_cast<std::uint32_t>(c);
      c1s[i] = static_cast<std::uint32_t>(c >> 32);
    }
    __m256i c0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(c0s));
    __m256i c1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(c1s));
    __m256i c2 = _mm256_set1_epi64x(c2_init);
    __m256i c3 = _mm256_set1_epi64x(c3_init);
    __m256i k0 = _mm256_set1_epi64x(key[0]);
    __m256i k1 = _mm256_set1_epi64x(key[1]);

    for (int round = 0; round < 10; ++round) {
      const __m256i p0 = _mm256_mul_epu32(m0, c0);
      const __m256i p1 = _mm256_mul_epu32(m1, c2);
      const __m256i lo0 = _mm256_and_si256(p0, mask32);
      const __m256i hi0 = _mm256_srli_epi64(p0, 32);
      const __m256i lo1 = _mm256_and_si256(p1, mask32);
      const __m256i hi1 = _mm256_srli_epi64(p1, 32);
      const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
      const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
      c0 = n0;
      c1 = lo1;
      c2 = n2;
      c3 = lo0;
      k0 = _mm256_and_si256(_mm256_add_epi64(k0, w0), mask32);
      k1 = _mm256_and_si256(_mm256_add_epi64(k1, w1), mask32);
    }

    alignas(32) std::uint64_t r0[4], r1[4], r2[4], r3[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(r0), c0);
    _mm256_store_si256(reinterpret_cast<__m256i*>(r1), c1);
    _mm256_store_si256(reinterpret_cast<__m256i*>(r2), c2);
    _mm256_store_si256(reinterpret_cast<__m256i*>(r3), c3);
    for (int i = 0; i < 4; ++i) {
      std::uint32_t* o = out + 4 * (b + i);
      o[0] = static_cast<std::uint32_t>(r0[i]);
      o[1] = static_cast<std::uint32_t>(r1[i]);
      o[2] = static_cast<std::uint32_t>(r2[i]);
      o[3] = static_cast<std::uint32_t>(r3[i]);
    }
  }
  if (b < nblocks) {
    scalar::philox4x32_seq(ctr01 + b, c2_init, c3_init, key, out + 4 * b,
                           nblocks - b);
  }
}

#else  // !ROOTBAR_HAVE_AVX2

bool available() { return false; }

void heat_obstacle_row(const double* u, const double* obstacle, double* out,
                       std::size_t n, double coef) {
  scalar::heat_obstacle_row(u, obstacle, out, n, coef);
}

void philox4x32_seq(std::uint64_t ctr01, std::uint32_t c2, std::uint32_t c3,
                    const std::uint32_t key[2], std::uint32_t* out,
                    std::size_t nblocks) {
  scalar::philox4x32_seq(ctr01, c2, c3, key, out, nblocks);
}

#endif

}  // namespace rootbar::kernels::avx2
