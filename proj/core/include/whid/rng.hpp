#pragma once

#include <cstdint>
#include <random>

namespace whid {

/// Deterministic random source with pinned output sequences.
///
/// Every draw is defined in terms of std::mt19937_64 words so that a seed
/// reproduces bit-identical streams on any conforming standard library:
///   - uniform01():  (word >> 11) * 2^-53, one engine word per call
///   - uniform(a,b): a + (b - a) * uniform01()
///   - gaussian():   Box-Muller, sqrt(-2 ln u1) * cos(2 pi u2), two words per
///                   call, u1 taken from the half-open interval (0, 1]
///   - coin():       top bit of one engine word
/// Distribution helpers from <random> are deliberately not used; their output
/// is implementation defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_word() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal deviate; consumes exactly two engine words.
    double gaussian();

    /// Fair coin from the top bit of one engine word.
    bool coin() { return (engine_() >> 63) != 0; }

    /// Uniform integer in [0, n); rejection sampled, unbiased. n must be > 0.
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
};

/// Child seed for stream `index` of a master seed (splitmix64 of
/// master + (index + 1) * golden gamma). Used wherever one configured seed
/// has to drive several independent streams, e.g. one per Monte Carlo trial.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace whid
