#pragma once

// Weighted periodic combs on Z with internal space Z/NZ: exact pattern
// frequencies M_n, their discrete Fourier transforms, and the polynomial
// certificate that two weightings share all (n+1)-point frequencies.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmc/cyclotomic.hpp"
#include "wmc/exact.hpp"

namespace wmc::cyclic {

/// Colour windows A_1..A_m in Z/NZ with one weight per window. Windows must be
/// pairwise disjoint; empty windows are allowed.
struct CyclicWeighting {
    int N = 0;
    std::vector<std::vector<int>> windows;
    std::vector<Rational> weights;

    /// Throws ValidationError naming the first problem found (colliding
    /// residue, out-of-range residue, size mismatch).
    void validate() const;

    /// A_j = {j} for j = 0..N-1.
    static CyclicWeighting singletons(std::vector<Rational> weights);
};

/// c_0..c_{N-1}: the weight of the window containing j, or 0.
struct CoefficientVector {
    int N = 0;
    std::vector<Rational> c;

    Rational total() const;
    bool operator==(const CoefficientVector&) const = default;
};

CoefficientVector coefficients_from_weighting(const CyclicWeighting& w);
CoefficientVector make_coefficients(std::vector<Rational> c);

/// Mixed-radix encoding of (r_1..r_n) in (Z/NZ)^n; r_1 is the most significant digit.
std::size_t encode_tuple(std::span<const int> r, int N);
std::vector<int> decode_tuple(std::size_t index, int N, int n);

/// M_n(r) = sum_s c_s c_{s+r_1} ... c_{s+r_n}, indices mod N. Residues may be
/// any integers; they are reduced mod N. Rejects n = 0.
Rational pattern_frequency(const CoefficientVector& c, std::span<const int> r);

/// Default cap on N^n for dense tables.
inline constexpr std::uint64_t kTableGuard = 100'000'000;

/// N^n, or ResourceError when it exceeds guard.
std::uint64_t checked_power(int N, int n, std::uint64_t guard = kTableGuard);

/// Dense table of M_n over all N^n tuples, row-major by encode_tuple.
class PatternTable {
public:
    PatternTable(int N, int n, std::vector<Rational> values);

    int modulus() const noexcept { return N_; }
    int length() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    const Rational& at(std::size_t index) const { return values_.at(index); }
    const Rational& at(std::span<const int> r) const { return values_.at(encode_tuple(r, N_)); }
    const std::vector<Rational>& values() const noexcept { return values_; }
    Rational sum() const;

private:
    int N_;
    int n_;
    std::vector<Rational> values_;
};

/// Throws ResourceError when N^n exceeds guard.
PatternTable pattern_table(const CoefficientVector& c, int n, unsigned threads = 0,
                           std::uint64_t guard = kTableGuard);

struct Witness {
    std::vector<int> tuple;
    Rational first;
    Rational second;
};

struct Comparison {
    int N = 0;
    int n = 0;
    bool equal = true;
    std::size_t tuples_checked = 0;
    std::size_t differing = 0;
    /// First max_witnesses differing tuples in encode_tuple order.
    std::vector<Witness> witnesses;
};

Comparison compare_weightings(const CoefficientVector& c1, const CoefficientVector& c2, int n,
                              std::size_t max_witnesses = SIZE_MAX, unsigned threads = 0);

/// A polynomial kept as a list of integer factors (ascending coefficients).
struct FactoredPolynomial {
    std::vector<std::vector<BigInt>> factors;

    void validate() const;
    /// Full product, ascending coefficients.
    std::vector<BigInt> expand() const;
    /// Product of every factor but the last.
    FactoredPolynomial cofactor() const;
};

/// Product of the factors with exponents folded mod N.
CoefficientVector expand_factored(const FactoredPolynomial& p, int N);

/// Sum_j c_j w^{jk}, w = exp(-2 pi i / N), in long double. Relative error is
/// below 1e-12 for N <= 64.
std::complex<long double> eval_at_root(const CoefficientVector& c, long k);
/// Same value in exact arithmetic over Q(w), w a primitive 6th root. Requires N = 6.
cyclotomic::Zeta6 eval_at_root_exact6(const CoefficientVector& c, long k);
/// Same value in exact arithmetic over Q(w) for any N.
cyclotomic::CyclotomicNumber eval_at_root_exact(const CoefficientVector& c, long k);

/// Fourier transform of M_n: hat M_n(k) = D(k_1)...D(k_n) D(-(k_1+...+k_n)),
/// D(k) = sum_j c_j exp(-2 pi i jk / N). Values are long double complex.
class SpectralTable {
public:
    SpectralTable(int N, int n, std::vector<std::complex<long double>> values);

    /// Nominal relative precision of each entry.
    static constexpr long double kPrecision = 1e-15L;

    int modulus() const noexcept { return N_; }
    int length() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::complex<long double>& at(std::size_t index) const { return values_.at(index); }
    const std::vector<std::complex<long double>>& values() const noexcept { return values_; }

private:
    int N_;
    int n_;
    std::vector<std::complex<long double>> values_;
};

SpectralTable spectral_table(const CoefficientVector& c, int n, std::uint64_t guard = kTableGuard);

/// Inverse DFT, M(r) = N^{-n} sum_k hat M(k) w^{-k.r}; returns the real parts.
std::vector<long double> inverse_transform(const SpectralTable& t);

struct CertificateFact {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct CertificateReport {
    int N = 0;
    int n_max = 0;
    CoefficientVector c1;
    CoefficientVector c2;
    /// Structural facts (N = 6 only): vanishing at w^2, w^3, w^4, equality at
    /// x = 1, and the cofactor swap identities.
    std::vector<CertificateFact> facts;
    bool structural_ok = true;
    /// Highest n for which every spectral product agrees (0 if none).
    int equal_through = 0;
    /// First index tuple (lexicographic, smallest n) whose products differ.
    std::optional<std::vector<int>> witness;
    std::string witness_values;
    /// Index multisets with no zero entry whose product is nonzero, per n.
    std::vector<std::vector<std::vector<int>>> nonvanishing_classes;
    bool passed = false;

    std::string text() const;
};

/// Checks that the two polynomials give identical spectral products
/// P(w^k_1)...P(w^k_n) P(w^-(k_1+...+k_n)) for every n <= n_max, in exact
/// arithmetic. passed means "equal products through n_max".
CertificateReport certificate_check(const FactoredPolynomial& p1, const FactoredPolynomial& p2, int N,
                                    int n_max);

}  // namespace wmc::cyclic
