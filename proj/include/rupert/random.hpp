#pragma once

#include <cmath>
#include <cstdint>

#include "rupert/orientation.hpp"
#include "rupert/vec.hpp"

namespace rupert {

// Deterministic, platform-independent generator (splitmix64 stream).
// Standard-library distributions are avoided on purpose: their output is
// implementation-defined and the CLI promises byte-identical reruns.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        // Box-Muller; the log argument is kept away from zero.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::uint64_t state_;
};

// Decorrelated per-item seed for parallel batches.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Vec3 random_unit_vector(Rng& rng) {
    while (true) {
        const Vec3 v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = norm(v);
        if (n > 1e-6) return v / n;
    }
}

// Haar-uniform rotation from a random unit quaternion.
inline Orientation random_rotation(Rng& rng) {
    double q0, q1, q2, q3;
    while (true) {
        q0 = rng.gaussian();
        q1 = rng.gaussian();
        q2 = rng.gaussian();
        q3 = rng.gaussian();
        const double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
        if (n > 1e-6) {
            q0 /= n, q1 /= n, q2 /= n, q3 /= n;
            break;
        }
    }
    Orientation o;
    o.row[0] = {1 - 2 * (q2 * q2 + q3 * q3), 2 * (q1 * q2 + q0 * q3), 2 * (q1 * q3 - q0 * q2)};
    o.row[1] = {2 * (q1 * q2 - q0 * q3), 1 - 2 * (q1 * q1 + q3 * q3), 2 * (q2 * q3 + q0 * q1)};
    o.row[2] = {2 * (q1 * q3 + q0 * q2), 2 * (q2 * q3 - q0 * q1), 1 - 2 * (q1 * q1 + q2 * q2)};
    return o;
}

} // namespace rupert
