#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ugsim {

/// SplitMix64 finalizer. Used only to derive stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed of an independent stream from a master seed and a key
/// path, e.g. (master, proposer_id) or (master, grid_index, emotion, arm).
/// The derivation folds each key through SplitMix64 in order, so different
/// key paths give unrelated seeds and the result never depends on which
/// thread asks for it.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

/// A seeded random stream. The engine is mt19937_64, whose output sequence
/// is fixed by the standard; every variate below is computed here rather than
/// through <random> distributions so streams replay identically on any
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    return Rng(derive_seed(master, keys));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1); one engine call.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by the Marsaglia polar method. The second variate of
  /// each accepted pair is discarded so the stream carries no hidden state.
  double normal();

  /// Gamma(shape, 1) by Marsaglia-Tsang, with the shape+1 boost for shape < 1.
  double gamma(double shape);

  /// Beta(a, b) as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ugsim
