#pragma once

// Reference evaluators written independently of the library code. They work
// on plain arrays and integers so a bug in the library types cannot leak in.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// Focal elements of the frame: T = {trust}, N = {distrust}, U = {trust, distrust}.
// Encoded as bitsets so that intersection is a bitwise and.
inline constexpr std::array<unsigned, 3> kFocal = {0b01u, 0b10u, 0b11u};

using Mass = std::array<double, 3>; // (T, N, U)

// Dempster's rule by enumeration of all nine pairs of focal elements.
inline Mass dempster(const Mass& a, const Mass& b)
{
    std::array<double, 4> acc{}; // indexed by the intersection bitset
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            acc[kFocal[i] & kFocal[j]] += a[i] * b[j];
        }
    }
    const double k = 1.0 - acc[0];
    return {acc[0b01] / k, acc[0b10] / k, acc[0b11] / k};
}

inline Mass dempster_fold(const std::vector<Mass>& ms)
{
    Mass acc = ms.front();
    for (std::size_t i = 1; i < ms.size(); ++i) {
        acc = dempster(acc, ms[i]);
    }
    return acc;
}

inline Mass random_mass(std::mt19937_64& rng)
{
    // Uniform point on the simplex via sorted cut points.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng), y = u(rng);
    if (x > y) {
        std::swap(x, y);
    }
    return {x, y - x, 1.0 - y};
}

// Credibility rule evaluated case by case on the two printed conditions.
inline double credibility_rule(double phi, bool said_trust, double t, double n)
{
    if (t > n) {
        return said_trust ? std::min(1.0, phi + t) : std::fabs(phi - n);
    }
    if (n > t) {
        return said_trust ? std::fabs(phi - t) : std::min(1.0, phi + n);
    }
    return phi;
}

// |E| + ceil(|E| * num / den) + 1 on integers only.
inline std::uint64_t replenishment(std::uint64_t e, std::uint64_t num, std::uint64_t den)
{
    return e + (e * num + den - 1) / den + 1;
}

} // namespace oracle
