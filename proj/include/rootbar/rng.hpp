#pragma once

#include <array>
#include <cstdint>

namespace rootbar::rng {

// Standard-normal stream derived from (seed, stream_id) with philox4x32-10.
// Blocks are indexed by a 64-bit counter, so a stream's output depends only
// on its id — parallel path simulations reproduce bit-identically regardless
// of scheduling.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream_id);

  double next();

 private:
  void refill();

  std::uint32_t key_[2];
  std::uint32_t c2_, c3_;
  std::uint64_t block_ = 0;
  static constexpr int kBatchBlocks = 64;  // 2 normals per block
  std::array<double, 2 * kBatchBlocks> buf_;
  int pos_ = 2 * kBatchBlocks;
};

}  // namespace rootbar::rng
