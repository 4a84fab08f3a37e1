#include "wmc/cyclic_comb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "wmc/errors.hpp"
#include "wmc/parallel.hpp"

namespace wmc::cyclic {

std::uint64_t checked_power(int N, int n, std::uint64_t guard) {
    std::uint64_t size = 1;
    for (int i = 0; i < n; ++i) {
        size *= static_cast<std::uint64_t>(N);
        if (size > guard)
            throw ResourceError(fmt::format("table of {}^{} entries exceeds the guard of {}", N, n, guard));
    }
    return size;
}

namespace {

int mod(long x, int N) { return static_cast<int>(((x % N) + N) % N); }


// Integer numerators over a common denominator.
struct ScaledCoefficients {
    std::vector<BigInt> numer;
    BigInt denom;
};

ScaledCoefficients scale(const CoefficientVector& c) {
    ScaledCoefficients out;
    out.denom = 1;
    for (const auto& q : c.c) mpz_lcm(out.denom.get_mpz_t(), out.denom.get_mpz_t(), q.get_den_mpz_t());
    out.numer.reserve(c.c.size());
    for (const auto& q : c.c) out.numer.push_back(q.get_num() * (out.denom / q.get_den()));
    return out;
}

void require_valid(const CoefficientVector& c) {
    if (c.N < 1) throw ValidationError("modulus N must be positive");
    if (static_cast<int>(c.c.size()) != c.N)
        throw ValidationError(fmt::format("coefficient vector has {} entries, expected N = {}", c.c.size(), c.N));
}

std::string join(std::span<const int> r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
}

}  // namespace

void CyclicWeighting::validate() const {
    if (N < 1) throw ValidationError("modulus N must be positive");
    if (windows.empty()) throw ValidationError("a weighting needs at least one window");
    if (windows.size() != weights.size())
        throw ValidationError(
            fmt::format("{} windows but {} weights", windows.size(), weights.size()));
    std::vector<int> owner(static_cast<std::size_t>(N), -1);
    for (std::size_t k = 0; k < windows.size(); ++k) {
        for (int j : windows[k]) {
            if (j < 0 || j >= N)
                throw ValidationError(fmt::format("residue {} in window {} is outside 0..{}", j, k, N - 1));
            if (owner[j] == static_cast<int>(k))
                throw ValidationError(fmt::format("residue {} listed twice in window {}", j, k));
            if (owner[j] >= 0)
                throw ValidationError(
                    fmt::format("windows {} and {} overlap at residue {}", owner[j], k, j));
            owner[j] = static_cast<int>(k);
        }
    }
}

CyclicWeighting CyclicWeighting::singletons(std::vector<Rational> weights) {
    CyclicWeighting w;
    w.N = static_cast<int>(weights.size());
    for (int j = 0; j < w.N; ++j) w.windows.push_back({j});
    w.weights = std::move(weights);
    return w;
}

Rational CoefficientVector::total() const {
    Rational s = 0;
    for (const auto& x : c) s += x;
    return s;
}

CoefficientVector coefficients_from_weighting(const CyclicWeighting& w) {
    w.validate();
    CoefficientVector out{w.N, std::vector<Rational>(static_cast<std::size_t>(w.N), Rational(0))};
    for (std::size_t k = 0; k < w.windows.size(); ++k)
        for (int j : w.windows[k]) out.c[j] = w.weights[k];
    return out;
}

CoefficientVector make_coefficients(std::vector<Rational> c) {
    int N = static_cast<int>(c.size());
    return {N, std::move(c)};
}

std::size_t encode_tuple(std::span<const int> r, int N) {
    std::size_t index = 0;
    for (int x : r) index = index * static_cast<std::size_t>(N) + static_cast<std::size_t>(mod(x, N));
    return index;
}

std::vector<int> decode_tuple(std::size_t index, int N, int n) {
    std::vector<int> r(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        r[i] = static_cast<int>(index % static_cast<std::size_t>(N));
        index /= static_cast<std::size_t>(N);
    }
    return r;
}

Rational pattern_frequency(const CoefficientVector& c, std::span<const int> r) {
    require_valid(c);
    if (r.empty()) throw ValidationError("pattern length n must be at least 1");
    Rational total = 0;
    for (int s = 0; s < c.N; ++s) {
        Rational term = c.c[s];
        for (int x : r) {
            if (term == 0) break;
            term *= c.c[mod(static_cast<long>(s) + x, c.N)];
        }
        total += term;
    }
    return total;
}

PatternTable::PatternTable(int N, int n, std::vector<Rational> values) : N_(N), n_(n), values_(std::move(values)) {}

Rational PatternTable::sum() const {
    Rational s = 0;
    for (const auto& v : values_) s += v;
    return s;
}

PatternTable pattern_table(const CoefficientVector& c, int n, unsigned threads, std::uint64_t guard) {
    require_valid(c);
    if (n < 1) throw ValidationError("pattern length n must be at least 1");
    const int N = c.N;
    const std::size_t size = checked_power(N, n, guard);
    const std::size_t block = size / static_cast<std::size_t>(N);  // entries per leading residue
    const ScaledCoefficients sc = scale(c);
    const BigInt denom_power = [&] {
        BigInt d = 1;
        for (int i = 0; i <= n; ++i) d *= sc.denom;
        return d;
    }();

    std::vector<Rational> values(size);
    // Depth-first over r_1..r_n; partial[d][s] = a_s * a_{s+r_1} * ... * a_{s+r_d}.
    parallel_chunks(static_cast<std::size_t>(N), threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
        std::vector<std::vector<BigInt>> partial(static_cast<std::size_t>(n) + 1,
                                                 std::vector<BigInt>(static_cast<std::size_t>(N)));
        partial[0] = sc.numer;
        std::vector<int> r(static_cast<std::size_t>(n), 0);
        for (std::size_t first = lo; first < hi; ++first) {
            for (std::size_t offset = 0; offset < block; ++offset) {
                const std::size_t index = first * block + offset;
                auto digits = decode_tuple(index, N, n);
                // Recompute only the levels whose digit changed.
                int level = 0;
                while (level < n && offset != 0 && digits[level] == r[level]) ++level;
                if (offset == 0) level = 0;
                for (int d = level; d < n; ++d) {
                    r[d] = digits[d];
                    for (int s = 0; s < N; ++s) partial[d + 1][s] = partial[d][s] * sc.numer[mod(s + r[d], N)];
                }
                BigInt sum = 0;
                for (int s = 0; s < N; ++s) sum += partial[n][s];
                Rational v(sum, denom_power);
                v.canonicalize();
                values[index] = std::move(v);
            }
        }
    });
    return PatternTable(N, n, std::move(values));
}

Comparison compare_weightings(const CoefficientVector& c1, const CoefficientVector& c2, int n,
                              std::size_t max_witnesses, unsigned threads) {
    require_valid(c1);
    require_valid(c2);
    if (c1.N != c2.N)
        throw ValidationError(fmt::format("cannot compare weightings with N = {} and N = {}", c1.N, c2.N));
    checked_power(c1.N, n, kTableGuard);
    const PatternTable t1 = pattern_table(c1, n, threads);
    const PatternTable t2 = pattern_table(c2, n, threads);
    Comparison out;
    out.N = c1.N;
    out.n = n;
    out.tuples_checked = t1.size();
    for (std::size_t i = 0; i < t1.size(); ++i) {
        if (t1.at(i) == t2.at(i)) continue;
        ++out.differing;
        if (out.witnesses.size() < max_witnesses)
            out.witnesses.push_back({decode_tuple(i, c1.N, n), t1.at(i), t2.at(i)});
    }
    out.equal = out.differing == 0;
    return out;
}

void FactoredPolynomial::validate() const {
    if (factors.empty()) throw ValidationError("factored polynomial has no factors");
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i].empty()) throw ValidationError(fmt::format("factor {} is empty", i));
}

std::vector<BigInt> FactoredPolynomial::expand() const {
    validate();
    std::vector<BigInt> acc{BigInt(1)};
    for (const auto& f : factors) {
        std::vector<BigInt> next(acc.size() + f.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
        acc = std::move(next);
    }
    return acc;
}

FactoredPolynomial FactoredPolynomial::cofactor() const {
    validate();
    FactoredPolynomial q;
    q.factors.assign(factors.begin(), factors.end() - 1);
    if (q.factors.empty()) q.factors.push_back({BigInt(1)});
    return q;
}

CoefficientVector expand_factored(const FactoredPolynomial& p, int N) {
    if (N < 1) throw ValidationError("modulus N must be positive");
    const auto full = p.expand();
    CoefficientVector out{N, std::vector<Rational>(static_cast<std::size_t>(N), Rational(0))};
    for (std::size_t e = 0; e < full.size(); ++e) out.c[e % static_cast<std::size_t>(N)] += full[e];
    return out;
}

namespace {

// exp(-2 pi i m / N) with m reduced first, so the argument stays in [0, 2 pi).
std::complex<long double> twiddle(long m, int N) {
    const long double angle = -2.0L * std::numbers::pi_v<long double> * mod(m, N) / N;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::complex<long double> eval_at_root(const CoefficientVector& c, long k) {
    require_valid(c);
    std::complex<long double> acc = 0;
    for (int j = 0; j < c.N; ++j) {
        if (c.c[j] == 0) continue;
        const long double cj = static_cast<long double>(c.c[j].get_d());
        acc += cj * twiddle(static_cast<long>(j) * k, c.N);
    }
    return acc;
}

cyclotomic::Zeta6 eval_at_root_exact6(const CoefficientVector& c, long k) {
    require_valid(c);
    if (c.N != 6) throw ValidationError("exact Z[w6] evaluation needs N = 6");
    cyclotomic::Zeta6 acc;
    for (int j = 0; j < 6; ++j)
        if (c.c[j] != 0) acc += cyclotomic::Zeta6(c.c[j]) * cyclotomic::Zeta6::root_power(static_cast<long>(j) * k);
    return acc;
}

cyclotomic::CyclotomicNumber eval_at_root_exact(const CoefficientVector& c, long k) {
    require_valid(c);
    cyclotomic::Poly folded(static_cast<std::size_t>(c.N), Rational(0));
    for (int j = 0; j < c.N; ++j) folded[mod(static_cast<long>(j) * k, c.N)] += c.c[j];
    return cyclotomic::CyclotomicNumber(c.N, std::move(folded));
}

SpectralTable::SpectralTable(int N, int n, std::vector<std::complex<long double>> values)
    : N_(N), n_(n), values_(std::move(values)) {}

SpectralTable spectral_table(const CoefficientVector& c, int n, std::uint64_t guard) {
    require_valid(c);
    if (n < 1) throw ValidationError("pattern length n must be at least 1");
    const std::size_t size = checked_power(c.N, n, guard);
    std::vector<std::complex<long double>> dhat(static_cast<std::size_t>(c.N));
    for (int k = 0; k < c.N; ++k) dhat[k] = eval_at_root(c, k);
    std::vector<std::complex<long double>> values(size);
    for (std::size_t i = 0; i < size; ++i) {
        const auto k = decode_tuple(i, c.N, n);
        std::complex<long double> v = 1;
        long total = 0;
        for (int kj : k) {
            v *= dhat[kj];
            total += kj;
        }
        values[i] = v * dhat[mod(-total, c.N)];
    }
    return SpectralTable(c.N, n, std::move(values));
}

std::vector<long double> inverse_transform(const SpectralTable& t) {
    const int N = t.modulus();
    const int n = t.length();
    std::vector<std::complex<long double>> work(t.values());
    std::vector<std::complex<long double>> line(static_cast<std::size_t>(N));
    std::vector<std::complex<long double>> inv_roots(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m) inv_roots[m] = twiddle(-m, N);
    // Separable transform: one length-N inverse DFT along each axis.
    std::size_t stride = 1;
    for (int axis = n - 1; axis >= 0; --axis) {
        const std::size_t span = stride * static_cast<std::size_t>(N);
        for (std::size_t base = 0; base < work.size(); base += span) {
            for (std::size_t inner = 0; inner < stride; ++inner) {
                for (int r = 0; r < N; ++r) {
                    std::complex<long double> acc = 0;
                    for (int k = 0; k < N; ++k)
                        acc += work[base + inner + static_cast<std::size_t>(k) * stride] * inv_roots[(k * r) % N];
                    line[r] = acc / static_cast<long double>(N);
                }
                for (int r = 0; r < N; ++r) work[base + inner + static_cast<std::size_t>(r) * stride] = line[r];
            }
        }
        stride = span;
    }
    std::vector<long double> out(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real();
    return out;
}

namespace {

template <class Value>
struct ProductScan {
    int equal_through = 0;
    std::optional<std::vector<int>> witness;
    std::string witness_values;
    std::vector<std::vector<std::vector<int>>> classes;
};

// Compares prod_j P1(w^k_j) * P1(w^-sum k) against the same for P2 over all
// k in (Z/NZ)^n, n = 1..n_max.
template <class Value>
ProductScan<Value> scan_products(const std::vector<Value>& v1, const std::vector<Value>& v2, int N, int n_max,
                                 const Value& one) {
    ProductScan<Value> out;
    for (int n = 1; n <= n_max; ++n) {
        std::set<std::vector<int>> nonvanishing;
        const std::size_t size = checked_power(N, n, kTableGuard);
        bool all_equal = true;
        for (std::size_t i = 0; i < size; ++i) {
            const auto k = decode_tuple(i, N, n);
            Value a = one, b = one;
            long total = 0;
            for (int kj : k) {
                a *= v1[kj];
                b *= v2[kj];
                total += kj;
            }
            a *= v1[mod(-total, N)];
            b *= v2[mod(-total, N)];
            if (!(a == b)) {
                all_equal = false;
                if (!out.witness) {
                    out.witness = k;
                    out.witness_values = a.str() + " vs " + b.str();
                }
                break;
            }
            if (!a.is_zero() && std::find(k.begin(), k.end(), 0) == k.end()) {
                auto sorted = k;
                std::sort(sorted.begin(), sorted.end());
                nonvanishing.insert(sorted);
            }
        }
        if (!all_equal) break;
        out.equal_through = n;
        out.classes.emplace_back(nonvanishing.begin(), nonvanishing.end());
    }
    return out;
}

}  // namespace

CertificateReport certificate_check(const FactoredPolynomial& p1, const FactoredPolynomial& p2, int N,
                                    int n_max) {
    if (N < 1) throw ValidationError("modulus N must be positive");
    if (n_max < 1) throw ValidationError("n_max must be at least 1");
    CertificateReport rep;
    rep.N = N;
    rep.n_max = n_max;
    rep.c1 = expand_factored(p1, N);
    rep.c2 = expand_factored(p2, N);

    auto add_fact = [&](std::string name, bool holds, std::string detail) {
        rep.structural_ok = rep.structural_ok && holds;
        rep.facts.push_back({std::move(name), holds, std::move(detail)});
    };

    if (N == 6) {
        using cyclotomic::Zeta6;
        for (int k : {2, 3, 4}) {
            const Zeta6 a = eval_at_root_exact6(rep.c1, k);
            const Zeta6 b = eval_at_root_exact6(rep.c2, k);
            add_fact(fmt::format("P1(w^{0}) = P2(w^{0}) = 0", k), a.is_zero() && b.is_zero(),
                     "P1 = " + a.str() + ", P2 = " + b.str());
        }
        const Zeta6 at_one1 = eval_at_root_exact6(rep.c1, 0);
        const Zeta6 at_one2 = eval_at_root_exact6(rep.c2, 0);
        add_fact("P1(1) = P2(1)", at_one1 == at_one2, "P1(1) = " + at_one1.str() + ", P2(1) = " + at_one2.str());

        const auto q1 = expand_factored(p1.cofactor(), 6);
        const auto q2 = expand_factored(p2.cofactor(), 6);
        const Zeta6 w4 = Zeta6::root_power(4);
        const Zeta6 lhs1 = w4 * eval_at_root_exact6(q1, -1);
        const Zeta6 rhs1 = eval_at_root_exact6(q2, 1);
        add_fact("w^4 Q1(w^-1) = Q2(w)", lhs1 == rhs1, lhs1.str() + " vs " + rhs1.str());
        const Zeta6 lhs2 = w4 * eval_at_root_exact6(q2, -1);
        const Zeta6 rhs2 = eval_at_root_exact6(q1, 1);
        add_fact("w^4 Q2(w^-1) = Q1(w)", lhs2 == rhs2, lhs2.str() + " vs " + rhs2.str());
        const Zeta6 n1 = eval_at_root_exact6(rep.c1, 1) * eval_at_root_exact6(rep.c1, -1);
        const Zeta6 n2 = eval_at_root_exact6(rep.c2, 1) * eval_at_root_exact6(rep.c2, -1);
        add_fact("P1(w)P1(w^-1) = P2(w)P2(w^-1)", n1 == n2, n1.str() + " vs " + n2.str());

        std::vector<Zeta6> v1, v2;
        for (int k = 0; k < 6; ++k) {
            v1.push_back(eval_at_root_exact6(rep.c1, k));
            v2.push_back(eval_at_root_exact6(rep.c2, k));
        }
        auto scan = scan_products(v1, v2, 6, n_max, Zeta6(1));
        rep.equal_through = scan.equal_through;
        rep.witness = std::move(scan.witness);
        rep.witness_values = std::move(scan.witness_values);
        rep.nonvanishing_classes = std::move(scan.classes);
    } else {
        using cyclotomic::CyclotomicNumber;
        std::vector<CyclotomicNumber> v1, v2;
        for (int k = 0; k < N; ++k) {
            v1.push_back(eval_at_root_exact(rep.c1, k));
            v2.push_back(eval_at_root_exact(rep.c2, k));
        }
        auto scan = scan_products(v1, v2, N, n_max, CyclotomicNumber(N, Rational(1)));
        rep.equal_through = scan.equal_through;
        rep.witness = std::move(scan.witness);
        rep.witness_values = std::move(scan.witness_values);
        rep.nonvanishing_classes = std::move(scan.classes);
    }
    rep.passed = rep.equal_through == n_max;
    return rep;
}

std::string CertificateReport::text() const {
    std::ostringstream os;
    auto vec = [](const CoefficientVector& c) {
        std::string s = "[";
        for (std::size_t i = 0; i < c.c.size(); ++i) s += (i ? "," : "") + to_string(c.c[i]);
        return s + "]";
    };
    os << "certificate N=" << N << " n_max=" << n_max << "\n";
    os << "c1 = " << vec(c1) << "\n";
    os << "c2 = " << vec(c2) << "\n";
    if (facts.empty()) {
        os << "structural facts: not applicable for N != 6\n";
    } else {
        os << "structural facts:\n";
        for (const auto& f : facts)
            os << "  [" << (f.holds ? "ok" : "FAIL") << "] " << f.name << "   (" << f.detail << ")\n";
    }
    for (std::size_t i = 0; i < nonvanishing_classes.size(); ++i) {
        os << "n=" << i + 1 << ": products equal; nonvanishing classes without a zero index:";
        if (nonvanishing_classes[i].empty()) os << " none";
        for (const auto& cls : nonvanishing_classes[i]) os << " " << join(cls);
        os << "\n";
    }
    if (witness)
        os << "n=" << witness->size() << ": products differ at k=" << join(*witness) << ": " << witness_values
           << "\n";
    os << "verdict: products " << (passed ? "equal" : "not equal") << " through n=" << n_max << " (highest equal n=" << equal_through << ")\n";
    return os.str();
}

}  // namespace wmc::cyclic
