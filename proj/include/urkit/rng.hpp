#pragma once

#include <cstdint>

namespace urkit {

// Identifies one replication's innovation stream. The stream is a pure
// function of (base_seed, replication_index), so Monte Carlo output does
// not depend on thread count or evaluation order.
struct SeedSpec {
    std::uint64_t base_seed = 0;
    std::uint64_t replication_index = 0;
};

namespace rng {

// splitmix64 finalizer, used to derive substream states.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4a919f38ba964ULL;
    return z ^ (z >> 31);
}

// xoshiro256** (Blackman & Vigna), seeded through splitmix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Seedable stream with standard-normal and Student-t draws. Gaussians come
// from Box-Muller on fixed 53-bit uniforms, so output is bit-identical for
// a given SeedSpec on any platform.
class Stream {
public:
    explicit Stream(SeedSpec seed)
        : eng_(derive(seed.base_seed, seed.replication_index)) {}

    double uniform01() {  // in (0, 1)
        const std::uint64_t bits = eng_.next() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double gaussian();

    // unit-variance Student-t: t_df scaled by sqrt((df-2)/df), df > 2
    double student_t_unit(int df);

private:
    static std::uint64_t derive(std::uint64_t base, std::uint64_t rep) {
        std::uint64_t sm = base;
        std::uint64_t h = splitmix64(sm);
        sm = h ^ (rep * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
        return splitmix64(sm);
    }

    Xoshiro256 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace rng
}  // namespace urkit
