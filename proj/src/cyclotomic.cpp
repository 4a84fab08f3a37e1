#include "wmc/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "wmc/errors.hpp"

namespace wmc::cyclotomic {

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

Poly remainder_monic(Poly a, const Poly& monic) {
    trim(a);
    const std::size_t d = monic.size() - 1;
    while (a.size() > d) {
        Rational lead = a.back();
        std::size_t shift = a.size() - 1 - d;
        for (std::size_t i = 0; i <= d; ++i) a[shift + i] -= lead * monic[i];
        trim(a);
    }
    return a;
}

namespace {

// Exact quotient of a by a monic divisor; the remainder must vanish.
Poly divide_exact(Poly a, const Poly& monic) {
    trim(a);
    const std::size_t d = monic.size() - 1;
    Poly q(a.size() >= monic.size() ? a.size() - d : 0, Rational(0));
    while (a.size() > d) {
        Rational lead = a.back();
        std::size_t shift = a.size() - 1 - d;
        q[shift] = lead;
        for (std::size_t i = 0; i <= d; ++i) a[shift + i] -= lead * monic[i];
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("cyclotomic division left a remainder");
    trim(q);
    return q;
}

}  // namespace

namespace {

const Poly& build_cyclotomic(int N, std::map<int, Poly>& memo) {
    if (auto it = memo.find(N); it != memo.end()) return it->second;
    Poly p(static_cast<std::size_t>(N) + 1, Rational(0));
    p[0] = -1;
    p[N] = 1;
    for (int d = 1; d < N; ++d)
        if (N % d == 0) p = divide_exact(p, build_cyclotomic(d, memo));
    return memo[N] = std::move(p);
}

}  // namespace

const Poly& cyclotomic_polynomial(int N) {
    if (N < 1) throw ValidationError("cyclotomic polynomial needs N >= 1");
    static std::mutex mu;
    static std::map<int, Poly> cache;
    std::lock_guard lock(mu);
    return build_cyclotomic(N, cache);
}

Zeta6 Zeta6::root_power(long k) {
    switch (((k % 6) + 6) % 6) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 1};
        case 3: return {-1, 0};
        case 4: return {0, -1};
        default: return {1, -1};
    }
}

std::complex<double> Zeta6::to_complex() const {
    const std::complex<double> w(0.5, -std::numbers::sqrt3 / 2.0);
    return a_.get_d() + b_.get_d() * w;
}

std::string Zeta6::str() const { return to_string(a_) + " + " + to_string(b_) + "*w"; }

CyclotomicNumber::CyclotomicNumber(int N, Rational value) : N_(N) {
    if (N < 1) throw ValidationError("cyclotomic modulus must be >= 1");
    if (value != 0) coeffs_.push_back(std::move(value));
    coeffs_ = remainder_monic(coeffs_, cyclotomic_polynomial(N));
}

CyclotomicNumber::CyclotomicNumber(int N, Poly coeffs) : N_(N) {
    if (N < 1) throw ValidationError("cyclotomic modulus must be >= 1");
    coeffs_ = remainder_monic(std::move(coeffs), cyclotomic_polynomial(N));
}

CyclotomicNumber CyclotomicNumber::root_power(int N, long k) {
    long e = ((k % N) + N) % N;
    Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
    p[e] = 1;
    return CyclotomicNumber(N, std::move(p));
}

std::complex<double> CyclotomicNumber::to_complex() const {
    std::complex<double> out = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double angle = -2.0 * std::numbers::pi * static_cast<double>(i % N_) / N_;
        out += coeffs_[i].get_d() * std::polar(1.0, angle);
    }
    return out;
}

std::string CyclotomicNumber::str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += to_string(coeffs_[i]);
        if (i > 0) s += "*w^" + std::to_string(i);
    }
    return s;
}

CyclotomicNumber operator+(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    if (x.N_ != y.N_) throw ValidationError("cyclotomic moduli differ");
    Poly out(std::max(x.coeffs_.size(), y.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) out[i] += x.coeffs_[i];
    for (std::size_t i = 0; i < y.coeffs_.size(); ++i) out[i] += y.coeffs_[i];
    return CyclotomicNumber(x.N_, std::move(out));
}

CyclotomicNumber operator-(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    if (x.N_ != y.N_) throw ValidationError("cyclotomic moduli differ");
    Poly out(std::max(x.coeffs_.size(), y.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) out[i] += x.coeffs_[i];
    for (std::size_t i = 0; i < y.coeffs_.size(); ++i) out[i] -= y.coeffs_[i];
    return CyclotomicNumber(x.N_, std::move(out));
}

CyclotomicNumber operator*(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    if (x.N_ != y.N_) throw ValidationError("cyclotomic moduli differ");
    return CyclotomicNumber(x.N_, multiply(x.coeffs_, y.coeffs_));
}

}  // namespace wmc::cyclotomic
