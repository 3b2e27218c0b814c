#pragma once

#include <cstdint>
#include <random>

namespace poincare {

// All randomness in the library flows from one master seed. Trial i of a run
// uses derive_seed(master, i), so results do not depend on scheduling order
// and any single trial can be replayed in isolation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ed2701ULL));
}

// mt19937_64 is fully specified by the standard; the distributions are not,
// so conversions to doubles/ranges are done by hand to keep golden files
// stable across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi] inclusive; modulo bias is irrelevant here
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // symmetric value in [-1, 1]
    double symmetric() { return uniform(-1.0, 1.0); }

private:
    std::mt19937_64 eng_;
};

} // namespace poincare
