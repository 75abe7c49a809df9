#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace leadersel {

/// One round of splitmix64; advances `state` and returns the next value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seedable, splittable random stream. Substreams derived from the same
/// master seed but different stream ids are statistically independent, so
/// per-walk / per-trial streams give schedule-independent reproducibility.
///
/// All variate generation is hand-rolled on top of the raw engine output;
/// std::* distributions are avoided because their output is
/// implementation-defined and would break bit-for-bit manifests.
class RngStream {
public:
    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0) {
        std::uint64_t s = master_seed;
        splitmix64(s);
        s ^= 0x632be59bd9b4e019ull * (stream_id + 1);
        base_ = splitmix64(s);
        engine_.seed(base_);
    }

    /// Independent substream addressed by id relative to this stream.
    RngStream substream(std::uint64_t id) const { return RngStream(base_, id); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased uniform integer in [0, bound), bound >= 1.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal via Box-Muller (cached second variate).
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t base_ = 0;
    std::mt19937_64 engine_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

/// Sum with pairwise recursion; result is independent of how the values were
/// produced (e.g. by concurrent workers) as long as the order of `values`
/// is fixed.
inline double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace leadersel
