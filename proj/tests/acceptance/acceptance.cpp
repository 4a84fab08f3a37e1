// Acceptance checks A1..A10. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <fmt/format.h>

#include "oracles.hpp"
#include "wmc/correlation.hpp"
#include "wmc/cyclic_comb.hpp"
#include "wmc/patch.hpp"
#include "wmc/stochastic.hpp"

using namespace wmc;
using cutproject::LatticePoint4;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

cyclic::CoefficientVector vec(const std::vector<long>& v) {
    std::vector<Rational> c;
    for (long x : v) c.emplace_back(x);
    return cyclic::make_coefficients(std::move(c));
}

cyclic::FactoredPolynomial factored(std::initializer_list<std::vector<long>> fs) {
    cyclic::FactoredPolynomial p;
    for (const auto& f : fs) {
        std::vector<BigInt> g;
        for (long x : f) g.emplace_back(x);
        p.factors.push_back(std::move(g));
    }
    return p;
}

const cyclic::FactoredPolynomial kP1 = factored({{1, 1}, {1, 1, 1}, {5, 0, 2}, {1, 3}});
const cyclic::FactoredPolynomial kP2 = factored({{1, 1}, {1, 1, 1}, {4, 1, 2}, {1, 3}});

struct Geometry {
    cutproject::SchemeEmbedding emb = cutproject::build_embedding();
    cutproject::ConvexWindow window =
        cutproject::ConvexWindow::regular_dodecagon(1.0, {std::exp(1.0) / 10, M_PI / 10});
    double enumerate_seconds = 0;
    cutproject::ColoredPatch patch;

    Geometry() {
        const auto t0 = Clock::now();
        patch = cutproject::enumerate_patch(emb, window, 60.0, 6.0);
        enumerate_seconds = seconds_since(t0);
    }
};

Geometry& geometry() {
    static Geometry g;
    return g;
}

Outcome a1() {
    const auto t0 = Clock::now();
    const auto c1 = cyclic::expand_factored(kP1, 6);
    const auto c2 = cyclic::expand_factored(kP2, 6);
    const double dt = seconds_since(t0);
    const bool ok = c1 == vec(oracle::kWs1) && c2 == vec(oracle::kWs2) && dt < 1e-3;
    return {ok, fmt::format("folded products equal ws1 and ws2 exactly, {:.1f} us", dt * 1e6)};
}

Outcome a2() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::size_t tuples = 0;
    for (int n = 1; n <= 4; ++n) {
        const auto cmp = cyclic::compare_weightings(vec(oracle::kWs1), vec(oracle::kWs2), n);
        ok = ok && cmp.equal && cmp.witnesses.empty();
        tuples += cmp.tuples_checked;
        // independent oracle on the same tuples
        oracle::for_each_tuple(6, n, [&](const std::vector<int>& r) {
            ok = ok && oracle::brute_m(oracle::kWs1, r) == oracle::brute_m(oracle::kWs2, r);
        });
    }
    const double dt = seconds_since(t0);
    ok = ok && tuples == 6 + 36 + 216 + 1296 && dt < 1.0;
    return {ok, fmt::format("{} tuples equal for n=1..4, {:.3f} s", tuples, dt)};
}

Outcome a3() {
    const auto t0 = Clock::now();
    const auto cmp = cyclic::compare_weightings(vec(oracle::kWs1), vec(oracle::kWs2), 5);
    const double dt = seconds_since(t0);
    bool ok = !cmp.equal && !cmp.witnesses.empty() && cmp.tuples_checked == 7776 && dt < 1.0;
    std::string witness;
    if (!cmp.witnesses.empty()) {
        const auto& w = cmp.witnesses.front();
        ok = ok && w.first == Rational(oracle::brute_m(oracle::kWs1, w.tuple)) &&
             w.second == Rational(oracle::brute_m(oracle::kWs2, w.tuple)) && w.first != w.second;
        witness = fmt::format("({}): {} vs {}", fmt::join(w.tuple, ","), to_string(w.first), to_string(w.second));
    }
    return {ok, fmt::format("{} of 7776 differ, first witness {}, {:.3f} s", cmp.differing, witness, dt)};
}

Outcome a4() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> d(-50, 50);
    std::vector<std::vector<long>> vectors{oracle::kWs1, oracle::kWs2};
    for (int i = 0; i < 50; ++i) {
        std::vector<long> v(6);
        for (auto& x : v) x = d(rng);
        vectors.push_back(v);
    }
    long double worst = 0;
    for (const auto& v : vectors)
        for (int n = 1; n <= 3; ++n) {
            const auto inv = cyclic::inverse_transform(cyclic::spectral_table(vec(v), n));
            std::size_t i = 0;
            oracle::for_each_tuple(6, n, [&](const std::vector<int>& r) {
                const long double exact = oracle::brute_m(v, r).get_d();
                worst = std::max(worst, std::abs(inv[i++] - exact));
            });
        }
    return {worst <= 1e-9L, fmt::format("{} vectors, n<=3, max abs error {:.3g}", vectors.size(),
                                        static_cast<double>(worst))};
}

Outcome a5() {
    const auto rep = cyclic::certificate_check(kP1, kP2, 6, 4);
    int held = 0;
    for (const auto& f : rep.facts) held += f.holds;
    const bool ok = rep.structural_ok && rep.passed && held == static_cast<int>(rep.facts.size()) && held >= 6;
    return {ok, fmt::format("{} of {} structural facts hold, products equal through n={}", held, rep.facts.size(),
                            rep.equal_through)};
}

Outcome a6() {
    const auto& e = geometry().emb;
    const auto& r = e.residuals;
    // independent check on random lattice points
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> d(-20, 20), parity(0, 1);
    double worst = 0;
    bool closed = true;
    for (int i = 0; i < 1000; ++i) {
        const int p = parity(rng);
        LatticePoint4 x;
        for (auto& v : x.d) v = 2 * d(rng) + p;
        const auto cx = e.apply_coxeter(x);
        closed = closed && cutproject::lattice_contains(cx);
        worst = std::max(worst, (e.physical_of(cx) - cutproject::rotation(M_PI / 6) * e.physical_of(x)).norm());
        worst = std::max(worst, (e.internal_of(cx) - cutproject::rotation(5 * M_PI / 6) * e.internal_of(x)).norm());
    }
    const double orth = (e.stacked() * e.stacked().transpose() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
    const bool ok = r.coxeter_order == 12 && r.lattice_preserved && closed && orth <= 1e-12 &&
                    r.equivariance_phys <= 1e-10 && r.equivariance_internal <= 1e-10 && worst <= 1e-10;
    return {ok, fmt::format("order {}, orthogonality {:.2g}, equivariance {:.2g}", r.coxeter_order, orth, worst)};
}

Outcome a7() {
    auto& g = geometry();
    const double density = static_cast<double>(g.patch.core_count()) / g.patch.core_area();
    const double ratio = density / (2 * g.window.area());
    return {ratio >= 0.98 && ratio <= 1.02,
            fmt::format("R=60: {} core points, density/(6 rho^2) = {:.4f}, enumeration {:.2f} s ({} candidates)",
                        g.patch.core_count(), ratio, g.enumerate_seconds, g.patch.candidates)};
}

Outcome a8() {
    auto& g = geometry();
    // Six random small vectors, one per residue class.
    auto small = correlation::small_difference_vectors(g.emb, g.patch);
    small.resize(std::min<std::size_t>(small.size(), 60));
    std::mt19937_64 rng(8);
    std::shuffle(small.begin(), small.end(), rng);
    std::array<std::optional<LatticePoint4>, 6> pick;
    for (const auto& v : small)
        if (!pick[cutproject::color_of(v)])
            pick[cutproject::color_of(v)] = v;
    bool ok = true;
    double worst_dev = 0;
    std::uint64_t forbidden = 0, fewest = UINT64_MAX;
    for (int r = 0; r < 6; ++r) {
        if (!pick[r]) return {false, fmt::format("no small vector with residue {}", r)};
        const std::array<LatticePoint4, 1> z{*pick[r]};
        const std::vector<cutproject::Vec2> shift{g.emb.internal_of(*pick[r])};
        const double area = cutproject::window_intersection_area(g.window, shift);
        std::vector<double> ratio, sigma;
        for (int k0 = 0; k0 < 6; ++k0)
            for (int k1 = 0; k1 < 6; ++k1) {
                const std::array<int, 2> ks{k0, k1};
                const auto e = correlation::empirical_colored_frequency(g.emb, g.patch, z, ks);
                if (k1 == (k0 + r) % 6) {
                    ratio.push_back(e.value / area);
                    sigma.push_back(e.sigma / area);
                    fewest = std::min(fewest, e.count);
                } else {
                    forbidden += e.count;
                    // a zero-cyclic-factor count must be within 3 sigma of 0, sigma = sqrt(max(count, 1))
                    ok = ok && e.count <= 3.0 * std::sqrt(std::max<double>(1.0, e.count));
                }
            }
        double mean = 0;
        for (double x : ratio) mean += x / ratio.size();
        for (std::size_t i = 0; i < ratio.size(); ++i) {
            worst_dev = std::max(worst_dev, std::abs(ratio[i] - mean) / sigma[i]);
            ok = ok && std::abs(ratio[i] - mean) <= 3 * sigma[i];
        }
    }
    return {ok, fmt::format("6 residues, max deviation {:.2f} sigma, fewest valid count {}, forbidden counts {}",
                            worst_dev, fewest, forbidden)};
}

Outcome a9() {
    auto& g = geometry();
    const auto a = vec(oracle::kWs1), b = vec(oracle::kWs2);
    const auto residues = correlation::best_witness_residues(a, b, 5);
    if (!residues) return {false, "no differing residue pattern"};
    const auto dt = correlation::find_distinguishing_tuple(g.emb, g.patch, *residues, a, b);
    const auto rep = correlation::correlation_compare(g.emb, g.patch, a, b, {dt.z}, 1, 5);
    bool ok = rep.all_agree_up_to(4) && rep.records.size() == 5;
    const auto& last = rep.records.back();
    const Rational m_a = Rational(oracle::brute_m(oracle::kWs1, *residues));
    const Rational m_b = Rational(oracle::brute_m(oracle::kWs2, *residues));
    std::vector<cutproject::Vec2> shifts;
    for (const auto& z : dt.z) shifts.push_back(g.emb.internal_of(z));
    const double area = cutproject::window_intersection_area(g.window, shifts);
    const double gap = area * Rational(m_a - m_b).get_d() / 6;
    ok = ok && gap != 0 && std::abs(last.analytic_gap - gap) <= 1e-9 * std::abs(gap);
    ok = ok && rep.base_points >= 50000;
    ok = ok && std::abs(last.gap) > 3 * last.gap_sigma && (last.gap > 0) == (gap > 0);
    return {ok, fmt::format("residues ({}), area {:.4f}, analytic gap {:.6g}, empirical gap {:.6g} = {:.1f} sigma, "
                            "{} base points",
                            fmt::join(*residues, ","), area, gap, last.gap, last.gap / last.gap_sigma,
                            rep.base_points)};
}

Outcome a10() {
    auto& g = geometry();
    const auto base = stochastic::ThinningConfig::from_weights(vec(oracle::kWs1), 0);
    const auto census = cutproject::color_census(g.patch);
    const auto small = correlation::small_difference_vectors(g.emb, g.patch);
    const std::vector<LatticePoint4> zs(small.begin(), small.begin() + 3);
    const int seeds = 100;
    std::array<std::uint64_t, 6> kept{};
    std::vector<double> sum(3), sq(3);
    for (int s = 0; s < seeds; ++s) {
        auto cfg = base;
        cfg.seed = 0x5eed0000ULL + s;
        const auto real = stochastic::thin(g.patch, cfg);
        const auto k = stochastic::kept_census(g.patch, real);
        for (int j = 0; j < 6; ++j) kept[j] += k[j];
        for (int i = 0; i < 3; ++i) {
            const double v = stochastic::pair_statistic(g.emb, g.patch, real, zs[i]).value;
            sum[i] += v;
            sq[i] += v * v;
        }
    }
    bool ok = true;
    double worst = 0;
    for (int j = 0; j < 6; ++j) {
        const double n = static_cast<double>(census[j]), p = base.p[j];
        const double mean = static_cast<double>(kept[j]) / seeds;
        const double sigma = std::sqrt(n * p * (1 - p) / seeds);
        if (sigma == 0) {
            ok = ok && mean == n * p;
            continue;
        }
        worst = std::max(worst, std::abs(mean - n * p) / sigma);
        ok = ok && std::abs(mean - n * p) <= 3 * sigma;
    }
    double worst_pair = 0;
    for (int i = 0; i < 3; ++i) {
        const double mean = sum[i] / seeds;
        const double sd = std::sqrt(std::max(0.0, (sq[i] - seeds * mean * mean) / (seeds - 1)));
        const double expect = stochastic::expected_pair_statistic(g.emb, g.patch, base, zs[i]);
        worst_pair = std::max(worst_pair, std::abs(mean - expect) / (sd / std::sqrt(seeds)));
        ok = ok && std::abs(mean - expect) <= 3 * sd / std::sqrt(seeds);
    }
    return {ok, fmt::format("100 seeds: kept counts within {:.2f} sigma, pair means within {:.2f} sigma", worst,
                            worst_pair)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
        {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}};
    int failed = 0;
    for (const auto& [id, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << fmt::format("{:<4} {}  {}", id, o.pass ? "PASS" : "FAIL", o.detail) << std::endl;
    }
    std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failed, criteria.size()) << std::endl;
    return failed == 0 ? 0 : 1;
}
