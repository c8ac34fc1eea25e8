#pragma once

#include <array>
#include <cstdint>

namespace acdc {

/// Deterministic random stream with cheap, collision-resistant substream
/// derivation.  A stream is identified by a 64-bit key; substream(tag)
/// derives an independent child stream from (key, tag) only, never from the
/// parent's draw position.  That makes every draw a pure function of
/// (base seed, tag path, draw index), so results are reproducible no matter
/// how work is split across threads.
///
/// The generator is xoshiro256**; keys are expanded to state with splitmix64.
/// All samplers below are implemented explicitly (no std::distribution) so
/// that output is bitwise identical across standard libraries.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t key);

  /// Independent child stream; depends only on this stream's key and `tag`.
  RngStream substream(std::uint64_t tag) const;

  std::uint64_t key() const { return key_; }

  /// Raw 64 random bits.
  std::uint64_t next();

  // UniformRandomBitGenerator interface.
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform on [0, 1): 53 random mantissa bits.
  double uniform();
  /// Uniform on (0, 1): never returns an exact endpoint.
  double uniform_open();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in {0, ..., n-1}.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal via Box-Muller (second variate cached).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Cauchy by inverse CDF: loc + scale * tan(pi * (U - 1/2)).
  double cauchy(double loc, double scale);

  /// Poisson with arbitrary non-negative mean (inversion for small means,
  /// transformed rejection for large ones).
  std::int64_t poisson(double mean);

 private:
  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// splitmix64 finalizer; used for key derivation and state expansion.
std::uint64_t splitmix64(std::uint64_t x);

/// Well-known tags for carving one base seed into per-phase substreams.
/// Usage: root.substream(rep).substream(phase) or deeper.
namespace stream_tag {
inline constexpr std::uint64_t kData = 0x01;
inline constexpr std::uint64_t kPilot = 0x02;
inline constexpr std::uint64_t kInitialDensity = 0x03;
inline constexpr std::uint64_t kAcdc = 0x04;
inline constexpr std::uint64_t kIsAbc = 0x05;
}  // namespace stream_tag

}  // namespace acdc
