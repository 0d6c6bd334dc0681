#include "loqs/rng.hpp"

#include <cmath>

namespace loqs {

namespace {

constexpr std::uint32_t kW32A = 0x9E3779B9u;
constexpr std::uint32_t kW32B = 0xBB67AE85u;
constexpr std::uint32_t kM4x32A = 0xD2511F53u;
constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kM4x32A, ctr[0], lo0, hi0);
    mulhilo(kM4x32B, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    counter_ = {0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

Rng Rng::split(std::uint64_t idx) const {
    // Mix the parent stream with the child index through one Philox block so
    // distinct (stream, idx) pairs land on distinct keys.
    std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(idx),
                                        static_cast<std::uint32_t>(idx >> 32),
                                        static_cast<std::uint32_t>(stream_),
                                        static_cast<std::uint32_t>(stream_ >> 32)};
    std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_ ^ 0x6A09E667u),
                                        static_cast<std::uint32_t>(seed_ >> 32)};
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kW32A;
        key[1] += kW32B;
    }
    std::uint64_t child = (static_cast<std::uint64_t>(ctr[1]) << 32) | ctr[0];
    return Rng(seed_, child);
}

void Rng::refill() {
    std::array<std::uint32_t, 4> ctr = counter_;
    std::array<std::uint32_t, 2> key = key_;
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kW32A;
        key[1] += kW32B;
    }
    buffer_ = ctr;
    avail_ = 4;
    if (++counter_[0] == 0)
        if (++counter_[1] == 0) ++counter_[2];
}

std::uint32_t Rng::next_u32() {
    if (avail_ == 0) refill();
    return buffer_[--avail_];
}

std::uint64_t Rng::next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    std::uint64_t limit = n * (~0ULL / n);
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

double Rng::gaussian() {
    if (have_gauss_) {
        have_gauss_ = false;
        return gauss_spare_;
    }
    double u1, u2;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    gauss_spare_ = r * std::sin(theta);
    have_gauss_ = true;
    return r * std::cos(theta);
}

}  // namespace loqs
