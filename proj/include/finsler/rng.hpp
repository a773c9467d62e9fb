#ifndef FINSLER_RNG_HPP
#define FINSLER_RNG_HPP

#include <cstdint>
#include <random>

namespace finsler {

/// Seeded uniform sampler with a fixed engine-to-double mapping, so that a
/// given seed reproduces the same sequence on every platform. (The standard
/// distributions are implementation-defined; this class avoids them.)
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

} // namespace finsler

#endif // FINSLER_RNG_HPP
