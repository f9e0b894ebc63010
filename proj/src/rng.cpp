#include "cqec/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqec {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(
    const std::array<std::uint64_t, 4>& counter,
    const std::array<std::uint64_t, 2>& key) {
  std::array<std::uint64_t, 4> c = counter;
  std::array<std::uint64_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, c[0], hi0, lo0);
    mulhilo(kMult1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

std::uint64_t RngStream::next_u64() {
  if (buffered_ == 0) {
    buffer_ = philox4x64({block_, 0, 0, 0}, key_);
    ++block_;
    buffered_ = 4;
  }
  return buffer_[4 - buffered_--];
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // 1 - u lies in (0, 1], keeping the log finite.
  double u1 = 1.0 - next_double();
  double u2 = next_double();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

double RngStream::next_exponential(double rate) {
  return -std::log(1.0 - next_double()) / rate;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound must be > 0");
  std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

RngStream make_stream(std::uint64_t master_seed, std::uint64_t trajectory,
                      Substream substream) {
  // Disjoint keys by construction: 8 substream bits below the trajectory id.
  return RngStream(master_seed,
                   (trajectory << 8) | static_cast<std::uint64_t>(substream));
}

}  // namespace cqec
