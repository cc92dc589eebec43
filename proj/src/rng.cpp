#include "rootbar/rng.hpp"

#include <cmath>

#include "rootbar/kernels.hpp"

namespace rootbar::rng {

namespace {
// (0,1]: top 53 bits shifted in, +1 so log() never sees zero.
inline double to_unit(std::uint64_t x) {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream_id) {
  key_[0] = static_cast<std::uint32_t>(seed);
  key_[1] = static_cast<std::uint32_t>(seed >> 32);
  c2_ = static_cast<std::uint32_t>(stream_id);
  c3_ = static_cast<std::uint32_t>(stream_id >> 32);
}

void NormalStream::refill() {
  std::uint32_t words[4 * kBatchBlocks];
  kernels::philox4x32_seq(block_, c2_, c3_, key_, words, kBatchBlocks);
  block_ += kBatchBlocks;
  for (int b = 0; b < kBatchBlocks; ++b) {
    const std::uint64_t a =
        static_cast<std::uint64_t>(words[4 * b]) |
        (static_cast<std::uint64_t>(words[4 * b + 1]) << 32);
    const std::uint64_t c =
        static_cast<std::uint64_t>(words[4 * b + 2]) |
        (static_cast<std::uint64_t>(words[4 * b + 3]) << 32);
    const double u1 = to_unit(a);
    const double u2 = to_unit(c);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    buf_[2 * b] = rad * std::cos(kTwoPi * u2);
    buf_[2 * b + 1] = rad * std::sin(kTwoPi * u2);
  }
  pos_ = 0;
}

double NormalStream::next() {
  if (pos_ >= 2 * kBatchBlocks) refill();
  return buf_[pos_++];
}

}  // namespace rootbar::rng
