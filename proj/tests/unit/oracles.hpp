#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's algorithms.

#include <cmath>
#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline const std::vector<long> kWs1{11, 25, 42, 45, 31, 14};
inline const std::vector<long> kWs2{10, 21, 39, 46, 35, 17};

// sum_s c_s prod_j c_{s + r_j mod N}, plain nested loops over arbitrary precision.
inline mpz_class brute_m(const std::vector<long>& c, const std::vector<int>& r) {
    const int N = static_cast<int>(c.size());
    mpz_class total = 0;
    for (int s = 0; s < N; ++s) {
        mpz_class term = c[s];
        for (int rj : r) term *= c[((s + rj) % N + N) % N];
        total += term;
    }
    return total;
}

// Visits every tuple in (Z/NZ)^n in lexicographic order.
template <class Fn>
void for_each_tuple(int N, int n, Fn&& fn) {
    std::vector<int> r(n, 0);
    while (true) {
        fn(r);
        int i = n - 1;
        while (i >= 0 && ++r[i] == N) r[i--] = 0;
        if (i < 0) return;
    }
}

// Inverse transform done the slow way: direct sum over k of
// prod_j D(k_j) D(-sum k) w^{-k.r} / N^n, in long double.
inline long double slow_inverse(const std::vector<long>& c, const std::vector<int>& r) {
    const int N = static_cast<int>(c.size());
    const int n = static_cast<int>(r.size());
    const long double two_pi = 2.0L * std::acos(-1.0L);
    auto D = [&](long k) {
        std::complex<long double> s = 0;
        for (int j = 0; j < N; ++j) {
            const long m = ((j * k) % N + N) % N;
            s += static_cast<long double>(c[j]) * std::polar(1.0L, -two_pi * m / N);
        }
        return s;
    };
    std::complex<long double> total = 0;
    for_each_tuple(N, n, [&](const std::vector<int>& k) {
        std::complex<long double> p = 1;
        long sum = 0, dot = 0;
        for (int j = 0; j < n; ++j) {
            p *= D(k[j]);
            sum += k[j];
            dot += static_cast<long>(k[j]) * r[j];
        }
        p *= D(-sum);
        p *= std::polar(1.0L, two_pi * (((dot % N) + N) % N) / N);
        total += p;
    });
    return total.real() / std::pow(static_cast<long double>(N), n);
}

// Monte-Carlo area of the set {p in box : inside(p)}.
template <class Inside>
std::pair<double, double> monte_carlo_area(double x0, double x1, double y0, double y1, std::uint64_t samples,
                                           std::uint64_t seed, Inside&& inside) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i)
        if (inside(ux(rng), uy(rng))) ++hits;
    const double box = (x1 - x0) * (y1 - y0);
    const double p = static_cast<double>(hits) / samples;
    return {box * p, box * std::sqrt(p * (1 - p) / samples)};
}

// Regular dodecagon membership by half-planes, written out directly.
inline bool in_dodecagon(double x, double y, double rho, double cx, double cy) {
    const double pi = std::acos(-1.0);
    const double apothem = rho * std::cos(pi / 12);
    for (int k = 0; k < 12; ++k) {
        const double a = pi / 12 + k * pi / 6;
        if ((x - cx) * std::cos(a) + (y - cy) * std::sin(a) > apothem) return false;
    }
    return true;
}

// Colour from the definition: parity class t and coordinate sum s mod 3.
inline int colour_oracle(const std::array<int, 4>& d) {
    const bool even = d[0] % 2 == 0;
    const int t = even ? 0 : 1;
    const int s = (((d[0] + d[1] + d[2] + d[3]) / 2) % 3 + 3) % 3;
    return (3 * t + 4 * s) % 6;
}

}  // namespace oracle
