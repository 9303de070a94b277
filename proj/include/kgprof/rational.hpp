#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace kgprof {

/// Exact non-negative rational, kept in lowest terms. Reports carry these
/// alongside rounded decimals so downstream scripts can recompute exactly.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational of(std::uint64_t n, std::uint64_t d) {
        const std::uint64_t g = std::gcd(n, d);
        return g ? Rational{n / g, d / g} : Rational{n, d};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Half-away-from-zero rounding, the display convention for table columns.
inline long long round_half_away(double x) { return std::llround(x); }

/// Fixed-point decimal rendering with the given number of places.
inline std::string format_fixed(double x, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, x);
    return buf;
}

}  // namespace kgprof
