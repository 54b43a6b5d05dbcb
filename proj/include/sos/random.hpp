#pragma once

#include <cstdint>
#include <random>

namespace sos {

/// Purpose tags keep the processing-time stream and the alpha stream of a
/// replication disjoint, so adding randomness to a policy never perturbs the
/// realization it is evaluated on.
enum class StreamPurpose : std::uint64_t {
  processing_time = 0x70726f63,
  alpha = 0x616c7068,
  generator = 0x67656e65,
};

/// SplitMix64 finalizer; used only to derive stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t rep, StreamPurpose purpose,
                                    std::uint64_t a = 0, std::uint64_t b = 0) noexcept {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ rep);
  h = mix64(h ^ static_cast<std::uint64_t>(purpose));
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return h;
}

/// A reproducible random stream. Conversions to floating point are done by
/// hand so draws are identical across standard library implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}
  Stream(std::uint64_t base, std::uint64_t rep, StreamPurpose purpose, std::uint64_t a = 0,
         std::uint64_t b = 0)
      : engine_(derive_seed(base, rep, purpose, a, b)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform01(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Integer uniform on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sos
