#pragma once

// Reference computations kept independent of the library code paths, plus
// seeded random generators for the property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Frozen at 30 digits with mpmath.
inline constexpr double kNu0p1 = 0.45699316087461238;
inline constexpr double kNu1 = 2.2665345076998488;
inline constexpr double kNu4 = 54.261333229427885;
inline constexpr double kNu10 = 22026.189460481057;
inline constexpr double kNu20 = 485165195.17006000;
inline constexpr double kNu30 = 10686474581524.241;
inline constexpr double kNu30OverE30 = 0.99999999999997926;
inline constexpr double kTildeMl_1211_x4 = 12.980640860219084;
inline constexpr double kTildeMl_2311_x2 = 0.76279483443768281;
inline constexpr double kMl_2311_z1 = 0.70534306732122400;
inline constexpr double kMl_2311_zm3 = 0.20483730974959473;
inline constexpr double kMl_skew_zm12 = 0.00066150827466813840;  // (0.7, 1.9, 2.3, 0.4)
inline constexpr double kMl_1505_z7 = 277444.77817934031;        // (1.5, 0.5, 3, 2)
inline constexpr double kLaplace_2311_s5 = 0.10725018479888073;
inline constexpr double kLaplace_1211_s3 = 0.40546510810816438;
inline constexpr double kU_06_08_2 = 0.55867647083686138;
inline constexpr double kU_m14_03_05 = -0.43165246589932985;
inline constexpr double kU_09_17_001 = 29.780193298870284;
inline constexpr double kG_a13_b07_y1 = 0.244873600931521;
inline constexpr double kG_a05_bm04_y001 = 10.9820808056212;
inline constexpr double kG_am03_b02_y001 = -0.398268337054311;
inline constexpr double kG_a25_b15_y75 = 5.6541377637393e-5;
inline constexpr double kNuRatio_4 = 0.072578371141499813;  // nu(4/e) / nu(4)

inline double loop_pochhammer(double x, int n, double k) {
    double p = 1.0;
    for (int j = 0; j < n; ++j) {
        p *= x + j * k;
    }
    return p;
}

inline double factorial(int n) {
    double f = 1.0;
    for (int j = 2; j <= n; ++j) {
        f *= j;
    }
    return f;
}

// Plain term-by-term series with explicit products, no ratio recursion.
inline double ml_series_products(double al, double be, double ga, double k, double z, int terms) {
    double s = 0.0;
    for (int n = 0; n < terms; ++n) {
        s += loop_pochhammer(ga, n, k) / (std::tgamma(be) * loop_pochhammer(be, n, al)) *
             std::pow(z, n) / factorial(n);
    }
    return s;
}

// Composite Simpson on [a, b] with an even number of intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (intervals % 2) {
        ++intervals;
    }
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

inline double poisson(double lambda, int n) {
    return std::exp(-lambda + n * std::log(lambda) - std::lgamma(n + 1.0));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Seeded generator of uniform draws for the property tests.
class Draws {
public:
    explicit Draws(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
