#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace winprob {

// SplitMix64 finalizer. Used to decorrelate user-supplied seeds and to derive
// substream seeds for parallel work.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic seed for substream `stream` of `master`. Distinct stream ids
// give decorrelated generators, so e.g. replicate r of a study is
// reproducible in isolation without running replicates 0..r-1.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return substream_seed(substream_seed(master, a), b);
}

// mt19937_64 with hand-rolled uniform/normal mappings. The standard pins the
// engine's output sequence but not the std::*_distribution algorithms, so we
// map bits to doubles ourselves to keep draws bit-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal, Box-Muller (one value per call).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace winprob
