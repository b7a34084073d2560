#pragma once

#include <cstdint>

namespace mlt {

// SplitMix64: a counter-based generator (Weyl increment + finalizer).
// Fully deterministic across platforms, cheap to seed, and trivially
// splittable by offsetting the seed, which is what the Monte-Carlo
// harness relies on (per-trial seed = base_seed + trial index).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0,1). The 53-bit mantissa draw lands in
    // [0, 1-2^-53]; exact zeros are rejected so callers can take logs and
    // tangents safely.
    double uniform_open() {
        for (;;) {
            double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace mlt
