#ifndef LOQS_RNG_HPP
#define LOQS_RNG_HPP

#include <array>
#include <cstdint>

namespace loqs {

/// Counter-based RNG (Philox4x32-10, Salmon et al. SC'11).
///
/// A generator is addressed by (seed, stream). Streams derived from the same
/// seed are statistically independent, so per-trial streams can be consumed
/// in any order under parallelism and still reproduce byte-identical results.
class Rng {
  public:
    Rng() : Rng(0, 0) {}
    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Independent child stream; deterministic in (seed, stream, idx).
    Rng split(std::uint64_t idx) const;

    std::uint64_t next_u64();
    std::uint32_t next_u32();

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n);
    /// Standard normal via Box-Muller.
    double gaussian();
    bool bernoulli(double p) { return uniform() < p; }

  private:
    void refill();

    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> buffer_;
    int avail_ = 0;
    bool have_gauss_ = false;
    double gauss_spare_ = 0.0;
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
};

}  // namespace loqs

#endif
