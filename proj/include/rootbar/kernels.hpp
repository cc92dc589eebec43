#pragma once

#include <cstddef>
#include <cstdint>

// Hot inner loops, provided as scalar reference kernels plus AVX2 variants
// selected at runtime. The two implementations are element-wise identical in
// operation order, so equivalence tests compare them bit for bit.

namespace rootbar::kernels {

enum class Backend { autodetect, scalar, avx2 };

// Override the dispatch (tests, ROOTBAR_SIMD env). autodetect uses cpuid.
void set_backend(Backend b);
Backend active_backend();
const char* backend_name();

// out[j] = max(obstacle[j], u[j] + coef*(u[j+1] - 2 u[j] + u[j-1]))
// for j in [1, n-2]; out[0] and out[n-1] are left untouched.
void heat_obstacle_row(const double* u, const double* obstacle, double* out,
                       std::size_t n, double coef);

// Philox 4x32-10 counter-based generator (Salmon et al. 2011 constants).
// One block: 4x32-bit counter + 2x32-bit key -> 4x32-bit output.
void philox4x32(const std::uint32_t ctr[4], const std::uint32_t key[2],
                std::uint32_t out[4]);

// nblocks consecutive blocks for one stream: counter c0 starts at ctr0 and
// increments per block (carry into c1); c2/c3 and the key stay fixed.
void philox4x32_seq(std::uint64_t ctr01, std::uint32_t c2, std::uint32_t c3,
                    const std::uint32_t key[2], std::uint32_t* out,
                    std::size_t nblocks);

namespace scalar {
void heat_obstacle_row(const double* u, const double* obstacle, double* out,
                       std::size_t n, double coef);
void philox4x32_seq(std::uint64_t ctr01, std::uint32_t c2, std::uint32_t c3,
                    const std::uint32_t key[2], std::uint32_t* out,
                    std::size_t nblocks);
}  // namespace scalar

namespace avx2 {
bool available();
// These must only be called when available() is true.
void heat_obstacle_row(const double* u, const double* obstacle, double* out,
                       std::size_t n, double coef);
void philox4x32_seq(std::uint64_t ctr01, std::uint32_t c2, std::uint32_t c3,
                    const std::uint32_t key[2], std::uint32_t* out,
                    std::size_t nblocks);
}  // namespace avx2

}  // namespace rootbar::kernels
