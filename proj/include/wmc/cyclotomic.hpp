#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "wmc/exact.hpp"

namespace wmc::cyclotomic {

/// Dense rational polynomial, ascending degree. Trailing zeros are trimmed by
/// the helpers below; the zero polynomial is the empty vector.
using Poly = std::vector<Rational>;

void trim(Poly& p);
Poly multiply(const Poly& a, const Poly& b);
/// Remainder of a modulo a monic divisor.
Poly remainder_monic(Poly a, const Poly& monic);
/// The N-th cyclotomic polynomial, computed by exact division of x^N - 1.
const Poly& cyclotomic_polynomial(int N);

/// Element of Q(w), w = exp(-2*pi*i/6), stored as a + b*w with w^2 = w - 1.
class Zeta6 {
public:
    Zeta6() = default;
    Zeta6(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}

    /// w^k for any integer k.
    static Zeta6 root_power(long k);

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    Zeta6 conj() const { return Zeta6(a_ + b_, -b_); }
    std::complex<double> to_complex() const;
    std::string str() const;

    friend Zeta6 operator+(const Zeta6& x, const Zeta6& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend Zeta6 operator-(const Zeta6& x, const Zeta6& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend Zeta6 operator-(const Zeta6& x) { return {-x.a_, -x.b_}; }
    friend Zeta6 operator*(const Zeta6& x, const Zeta6& y) {
        Rational bd = x.b_ * y.b_;
        return {x.a_ * y.a_ - bd, x.a_ * y.b_ + x.b_ * y.a_ + bd};
    }
    Zeta6& operator+=(const Zeta6& y) { return *this = *this + y; }
    Zeta6& operator*=(const Zeta6& y) { return *this = *this * y; }
    friend bool operator==(const Zeta6& x, const Zeta6& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

private:
    Rational a_ = 0;
    Rational b_ = 0;
};

/// Element of Q(w), w = exp(-2*pi*i/N), for any N >= 1. Stored as a polynomial
/// in w of degree < phi(N), reduced modulo the N-th cyclotomic polynomial.
class CyclotomicNumber {
public:
    explicit CyclotomicNumber(int N, Rational value = 0);
    CyclotomicNumber(int N, Poly coeffs);

    static CyclotomicNumber root_power(int N, long k);

    int modulus() const noexcept { return N_; }
    const Poly& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::complex<double> to_complex() const;
    std::string str() const;

    friend CyclotomicNumber operator+(const CyclotomicNumber& x, const CyclotomicNumber& y);
    friend CyclotomicNumber operator-(const CyclotomicNumber& x, const CyclotomicNumber& y);
    friend CyclotomicNumber operator*(const CyclotomicNumber& x, const CyclotomicNumber& y);
    CyclotomicNumber& operator*=(const CyclotomicNumber& y) { return *this = *this * y; }
    friend bool operator==(const CyclotomicNumber& x, const CyclotomicNumber& y) {
        return x.N_ == y.N_ && x.coeffs_ == y.coeffs_;
    }

private:
    int N_;
    Poly coeffs_;
};

}  // namespace wmc::cyclotomic
