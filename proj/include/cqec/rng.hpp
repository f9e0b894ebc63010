#pragma once

#include <array>
#include <cstdint>

namespace cqec {

/// Philox4x64-10 counter-based block generator (same algorithm as
/// numpy.random.Philox). Outputs are a pure function of (counter, key), so
/// streams are splittable by key and reproducible independent of scheduling.
std::array<std::uint64_t, 4> philox4x64(
    const std::array<std::uint64_t, 4>& counter,
    const std::array<std::uint64_t, 2>& key);

/// One random stream: key = (seed, stream_id), counter = block index.
/// Streams with distinct (seed, stream_id) pairs never overlap.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{seed, stream_id} {}

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53-bit resolution.
  double next_double();

  /// Standard normal (Box-Muller; values are produced in pairs).
  double next_normal();

  /// Exponential with the given rate (mean 1/rate).
  double next_exponential(double rate);

  /// Integer uniform on [0, bound) by rejection; bound must be positive.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buffer_{};
  int buffered_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Substream identifiers used by the trajectory pipeline.
enum class Substream : std::uint64_t {
  kJumps = 0,
  kMeasurementNoise = 1,
  kInitialState = 2,
};

/// Stream for one (trajectory, substream) pair under a master seed.
RngStream make_stream(std::uint64_t master_seed, std::uint64_t trajectory,
                      Substream substream);

}  // namespace cqec
