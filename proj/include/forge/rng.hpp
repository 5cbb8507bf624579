#pragma once

#include <array>
#include <cstdint>

namespace forge {

// Philox4x32-10 counter-based generator. A (key, counter) pair maps to four
// 32-bit words; distinct keys give independent streams and the mapping is a
// pure function, so chunked or threaded consumers see identical values.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
      const std::array<std::uint32_t, 4> next = {
          std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
          std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
      ctr = next;
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

/// One logical random stream keyed by (seed, stream id). Sample `index`
/// always sees the same four uniforms in (0,1) regardless of call order.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::array<double, 4> uniforms(std::uint64_t index) const {
    const auto words = Philox4x32::block(
        {std::uint32_t(index), std::uint32_t(index >> 32),
         std::uint32_t(stream_), std::uint32_t(stream_ >> 32)},
        {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)});
    std::array<double, 4> u;
    for (int k = 0; k < 4; ++k) u[k] = (words[k] + 0.5) * 0x1p-32;
    return u;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace forge
