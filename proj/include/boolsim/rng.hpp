// Counter-based random number generation (Philox4x32-10) with cheap,
// collision-resistant substream derivation. Every sampler in this project is
// a pure function of its inputs and an RngStream, so replicates can run on
// any worker without shared state and still reproduce bit-for-bit.
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace boolsim {

namespace detail {

// SplitMix64 finalizer, used to mix stream labels into stream ids.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace detail

// Philox 4x32-10 block cipher core. key = 64-bit seed, counter = 128 bits
// split as (block index, stream id). One block yields four 32-bit words.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream_id)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          c2_(static_cast<std::uint32_t>(stream_id)),
          c3_(static_cast<std::uint32_t>(stream_id >> 32)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            generate_block();
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on [0,1), 53-bit resolution.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as a log() argument.
    double u01_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    double exponential(double mean) { return -mean * std::log(u01_pos()); }

    std::int64_t poisson(double mu) {
        if (mu <= 0.0) return 0;
        return mu < 30.0 ? poisson_small(mu) : poisson_ptrs(mu);
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;

    void generate_block() {
        std::uint32_t c0 = static_cast<std::uint32_t>(block_);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t c2 = c2_, c3 = c3_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c0;
            std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c2;
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n0 = hi1 ^ c1 ^ k0;
            std::uint32_t n1 = lo1;
            std::uint32_t n2 = hi0 ^ c3 ^ k1;
            std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += kW0; k1 += kW1;
        }
        buf_[0] = c0; buf_[1] = c1; buf_[2] = c2; buf_[3] = c3;
        ++block_;
    }

    // Multiplication method; expected iterations mu+1.
    std::int64_t poisson_small(double mu) {
        double limit = std::exp(-mu);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= u01_pos();
        } while (p > limit);
        return k - 1;
    }

    // Hormann's PTRS transformed-rejection sampler, valid for mu >= 10.
    std::int64_t poisson_ptrs(double mu) {
        const double slam = std::sqrt(mu);
        const double loglam = std::log(mu);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            double u = u01() - 0.5;
            double v = u01_pos();
            double us = 0.5 - std::fabs(u);
            double kf = std::floor((2.0 * a / us + b) * u + mu + 0.43);
            if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
                kf * loglam - mu - std::lgamma(kf + 1.0)) {
                return static_cast<std::int64_t>(kf);
            }
        }
    }

    std::uint32_t key0_, key1_;
    std::uint32_t c2_, c3_;
    std::uint64_t block_ = 0;
    std::uint32_t buf_[4] = {};
    int pos_ = 4;
};

// Value-type handle for a named random stream. Identical (seed, stream_id)
// reproduce identical samples; distinct stream ids are independent by
// construction of the counter layout.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RngStream() = default;
    RngStream(std::uint64_t s, std::uint64_t id) : seed(s), stream_id(id) {}

    RngStream child(std::uint64_t label) const {
        return {seed, detail::mix64(stream_id ^ detail::mix64(label))};
    }
    RngStream child(std::uint64_t label, std::uint64_t index) const {
        return child(label).child(index);
    }
    RngStream child(std::string_view label) const {
        return child(detail::fnv1a(label));
    }
    RngStream child(std::string_view label, std::uint64_t index) const {
        return child(detail::fnv1a(label), index);
    }

    Philox engine() const { return Philox(seed, stream_id); }
};

} // namespace boolsim
