#include <doctest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "wmc/correlation.hpp"
#include "wmc/errors.hpp"

using namespace wmc;
using namespace wmc::correlation;
using cutproject::color_of;

namespace {

const SchemeEmbedding& emb() {
    static const SchemeEmbedding e = cutproject::build_embedding();
    return e;
}

ConvexWindow window() { return ConvexWindow::regular_dodecagon(1.0, Vec2(std::exp(1.0) / 10, M_PI / 10)); }

const ColoredPatch& patch30() {
    static const ColoredPatch p = cutproject::enumerate_patch(emb(), window(), 30.0, 6.0);
    return p;
}

cyclic::CoefficientVector vec(const std::vector<long>& v) {
    std::vector<Rational> c;
    for (long x : v) c.emplace_back(x);
    return cyclic::make_coefficients(std::move(c));
}

const LatticePoint4 kZero{{0, 0, 0, 0}};

nlohmann::json fixture() {
    std::ifstream in(std::string(WMC_FIXTURES) + "/n5_witness.json");
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("residues and validation") {
    std::vector<LatticePoint4> z{{{2, 0, 0, 0}}, {{1, 1, 1, 1}}};
    CHECK(residues_of(z) == std::vector<int>{4, color_of(z[1])});
    CHECK_THROWS_AS(residues_of(std::vector<LatticePoint4>{}), ValidationError);
    CHECK_THROWS_AS(residues_of(std::vector<LatticePoint4>(6, kZero)), ValidationError);
    CHECK_THROWS_AS(residues_of(std::vector<LatticePoint4>{{{1, 0, 0, 0}}}), ValidationError);
}

TEST_CASE("self pairs") {
    const auto& p = patch30();
    const std::array<LatticePoint4, 1> z{kZero};
    const auto census = [&] {
        std::array<std::size_t, 6> c{};
        for (const auto& q : p.points())
            if (p.in_core(q)) ++c[q.colour];
        return c;
    }();
    for (int j = 0; j < 6; ++j) {
        const std::array<int, 2> same{j, j}, other{j, (j + 1) % 6};
        auto e = empirical_colored_frequency(emb(), p, z, same);
        CHECK(e.count == census[j]);
        CHECK(e.value == doctest::Approx(census[j] / p.core_area()));
        CHECK(empirical_colored_frequency(emb(), p, z, other).count == 0);
        CHECK(analytic_colored_frequency(emb(), window(),
                                         cyclic::CyclicWeighting::singletons(std::vector<Rational>(6, Rational(1))), z,
                                         same) == doctest::Approx(window().area() / 6));
    }
}

TEST_CASE("analytic coloured frequency") {
    const auto singletons = cyclic::CyclicWeighting::singletons(std::vector<Rational>(6, Rational(1)));
    const std::array<LatticePoint4, 1> z{LatticePoint4{{1, 1, 1, -1}}};
    const int r = color_of(z[0]);
    const double area = area_term(emb(), window(), z);
    for (int k0 = 0; k0 < 6; ++k0)
        for (int k1 = 0; k1 < 6; ++k1) {
            const std::array<int, 2> ks{k0, k1};
            const double expect = (k1 == (k0 + r) % 6) ? area / 6 : 0.0;
            CHECK(analytic_colored_frequency(emb(), window(), singletons, z, ks) == doctest::Approx(expect));
        }
    const std::array<LatticePoint4, 2> zz{z[0], z[0]};
    CHECK(area_term(emb(), window(), zz) == doctest::Approx(area).epsilon(1e-14));
    const auto wrong = cyclic::CyclicWeighting::singletons(std::vector<Rational>(5, Rational(1)));
    const std::array<int, 2> ks{0, 0};
    CHECK_THROWS_AS(analytic_colored_frequency(emb(), window(), wrong, z, ks), ValidationError);
}

TEST_CASE("coloured counts sum to the uncoloured count") {
    const auto& p = patch30();
    const auto tuples = random_small_tuples(emb(), p, 3, 5, 77);
    for (const auto& t : tuples) {
        for (std::size_t n = 1; n <= t.size(); ++n) {
            std::span<const LatticePoint4> z(t.data(), n);
            const auto counts = count_patterns(emb(), p, z);
            std::uint64_t sum = 0;
            for (auto c : counts.by_colours) sum += c;
            CHECK(sum == counts.matches);
            CHECK(sum == uncoloured_pattern_count(emb(), p, z));
        }
    }
}

TEST_CASE("factorization of coloured pair counts") {
    const auto& p = patch30();
    const auto small = small_difference_vectors(emb(), p);
    std::array<std::optional<LatticePoint4>, 6> pick;
    for (const auto& v : small)
        if (!pick[color_of(v)]) pick[color_of(v)] = v;
    for (int r = 0; r < 6; ++r) {
        REQUIRE(pick[r].has_value());
        const std::array<LatticePoint4, 1> z{*pick[r]};
        const double area = area_term(emb(), window(), z);
        std::vector<double> ratio, sigma;
        for (int k0 = 0; k0 < 6; ++k0)
            for (int k1 = 0; k1 < 6; ++k1) {
                const std::array<int, 2> ks{k0, k1};
                const auto e = empirical_colored_frequency(emb(), p, z, ks);
                if (k1 == (k0 + r) % 6) {
                    ratio.push_back(e.value / area);
                    sigma.push_back(e.sigma / area);
                } else {
                    CHECK(e.count == 0);
                }
            }
        double mean = 0;
        for (double x : ratio) mean += x / ratio.size();
        for (std::size_t i = 0; i < ratio.size(); ++i) CHECK(std::abs(ratio[i] - mean) <= 3 * sigma[i]);
    }
}

TEST_CASE("empirical frequency is proportional to the analytic one") {
    const auto& p = patch30();
    const auto singletons = cyclic::CyclicWeighting::singletons(std::vector<Rational>(6, Rational(1)));
    const double kappa = (p.core_count() / p.core_area()) / (2 * window().area());
    for (const auto& t : random_small_tuples(emb(), p, 2, 4, 5)) {
        const int k0 = 1;
        std::vector<int> ks{k0};
        for (const auto& z : t) ks.push_back((k0 + color_of(z)) % 6);
        const auto e = empirical_colored_frequency(emb(), p, t, ks);
        const double a = analytic_colored_frequency(emb(), window(), singletons, t, ks);
        CHECK(std::abs(e.value - 2 * kappa * a) <= 4 * e.sigma + 0.02 * e.value);
    }
}

TEST_CASE("analytic coefficients of ws1 and ws2") {
    const auto& p = patch30();
    const auto a = vec(oracle::kWs1), b = vec(oracle::kWs2);
    for (const auto& t : random_small_tuples(emb(), p, 5, 10, 3)) {
        for (std::size_t n = 1; n <= 4; ++n) {
            std::span<const LatticePoint4> z(t.data(), n);
            CHECK(analytic_coefficient(emb(), window(), a, z) == analytic_coefficient(emb(), window(), b, z));
        }
        CHECK(analytic_coefficient(emb(), window(), a, t) != analytic_coefficient(emb(), window(), b, t));
    }
    const std::array<LatticePoint4, 1> z{kZero};
    CHECK(analytic_coefficient(emb(), window(), a, z) == doctest::Approx(window().area() * 5692 / 6));
    CHECK(analytic_coefficient(emb(), window(), vec({0, 0, 0, 0, 0, 0}), z) == 0.0);
    CHECK(empirical_coefficient(emb(), p, vec({0, 0, 0, 0, 0, 0}), z).value == 0.0);
}

TEST_CASE("weighted coefficient at z = 0") {
    const auto& p = patch30();
    const std::array<LatticePoint4, 1> z{kZero};
    std::array<std::size_t, 6> census{};
    for (const auto& q : p.points())
        if (p.in_core(q)) ++census[q.colour];
    double expect = 0;
    for (int j = 0; j < 6; ++j) expect += double(oracle::kWs1[j] * oracle::kWs1[j]) * census[j] / p.core_area();
    CHECK(empirical_coefficient(emb(), p, vec(oracle::kWs1), z).value == doctest::Approx(expect));
}

TEST_CASE("witness residues and fixtures") {
    const auto fx = fixture();
    const auto a = vec(oracle::kWs1), b = vec(oracle::kWs2);
    for (int n = 1; n <= 4; ++n) CHECK_FALSE(best_witness_residues(a, b, n).has_value());
    const auto best = best_witness_residues(a, b, 5);
    REQUIRE(best.has_value());
    CHECK(*best == fx["best_resolved_witness"]["residues"].get<std::vector<int>>());
    const auto first = fx["first_witness"]["residues"].get<std::vector<int>>();
    CHECK(oracle::brute_m(oracle::kWs1, first) == fx["first_witness"]["m_a"].get<long>());
    CHECK(oracle::brute_m(oracle::kWs2, first) == fx["first_witness"]["m_b"].get<long>());
    CHECK(oracle::brute_m(oracle::kWs1, *best) == fx["best_resolved_witness"]["m_a"].get<long>());
    CHECK(oracle::brute_m(oracle::kWs2, *best) == fx["best_resolved_witness"]["m_b"].get<long>());
}

TEST_CASE("distinguishing tuple") {
    const auto& p = patch30();
    const auto a = vec(oracle::kWs1), b = vec(oracle::kWs2);
    const std::vector<int> zeros{0, 0, 0, 0, 0};
    const auto dz = find_distinguishing_tuple(emb(), p, zeros, a, b, false);
    for (const auto& z : dz.z) CHECK(z == kZero);
    CHECK(dz.area == doctest::Approx(window().area()));
    CHECK(dz.m_a == 14933742772L);

    const std::vector<int> residues{1, 2, 3, 4, 5};
    const auto dt = find_distinguishing_tuple(emb(), p, residues, a, b);
    REQUIRE(dt.z.size() == 5);
    CHECK(residues_of(dt.z) == residues);
    CHECK(dt.meets_floor);
    CHECK(dt.area_fraction >= kAreaFloor);
    CHECK(dt.warning.empty());
    CHECK(required_margin(emb(), dt.z) <= p.margin());
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) CHECK(dt.z[i] != dt.z[j]);
    const double gap = dt.coefficient_a - dt.coefficient_b;
    CHECK(gap != 0.0);
    CHECK(gap == doctest::Approx(dt.area * Rational(dt.m_a - dt.m_b).get_d() / 6));
}

TEST_CASE("margin guard") {
    const auto tiny = cutproject::enumerate_patch(emb(), window(), 5.0, 0.5);
    const std::array<LatticePoint4, 1> z{LatticePoint4{{4, 4, 0, 0}}};
    REQUIRE(required_margin(emb(), z) > 0.5);
    CHECK_THROWS_AS(count_patterns(emb(), tiny, z), ValidationError);
}

TEST_CASE("comparison report") {
    const auto& p = patch30();
    const auto a = vec(oracle::kWs1), b = vec(oracle::kWs2);
    auto tuples = random_small_tuples(emb(), p, 5, 10, 1);
    const auto dt = find_distinguishing_tuple(emb(), p, *best_witness_residues(a, b, 5), a, b);
    tuples.push_back(dt.z);
    const auto rep = correlation_compare(emb(), p, a, b, tuples, 1, 5);
    CHECK(rep.records.size() == tuples.size() * 5);
    CHECK(rep.all_agree_up_to(4));
    CHECK(rep.kappa == doctest::Approx(1.0).epsilon(0.03));
    for (const auto& r : rep.records) {
        if (r.n <= 4) {
            CHECK(r.m_a == r.m_b);
            CHECK(r.verdict == Verdict::Agree);
        }
        CHECK(r.matches >= kMinMatches);
    }
    const auto& last = rep.records.back();
    CHECK(last.n == 5);
    CHECK(last.verdict == Verdict::Separate);
    CHECK((last.gap > 0) == (last.analytic_gap > 0));
    CHECK(rep.any_separate_at(5));
    CHECK(rep.table().find("separate") != std::string::npos);
    CHECK(to_string(Verdict::Insufficient) == "insufficient statistics");
    CHECK_THROWS_AS(correlation_compare(emb(), p, a, vec({1, 2, 3}), tuples, 1, 5), ValidationError);
}

TEST_CASE("report is reproducible and thread independent") {
    const auto& p = patch30();
    const auto a = vec(oracle::kWs1), b = vec(oracle::kWs2);
    const auto t1 = random_small_tuples(emb(), p, 3, 4, 9);
    CHECK(t1 == random_small_tuples(emb(), p, 3, 4, 9));
    const auto r1 = correlation_compare(emb(), p, a, b, t1, 1, 3, 1);
    const auto r2 = correlation_compare(emb(), p, a, b, t1, 1, 3, 3);
    CHECK(r1.table() == r2.table());
}

TEST_CASE("insufficient statistics are flagged") {
    const auto tiny = cutproject::enumerate_patch(emb(), window(), 1.5, 6.0);
    const auto a = vec(oracle::kWs1), b = vec(oracle::kWs2);
    const auto tuples = random_small_tuples(emb(), tiny, 2, 2, 1);
    const auto rep = correlation_compare(emb(), tiny, a, b, tuples, 1, 2);
    for (const auto& r : rep.records) CHECK(r.verdict == Verdict::Insufficient);
}

TEST_CASE("convergence between R and 2R") {
    const auto big = cutproject::enumerate_patch(emb(), window(), 60.0, 6.0);
    const auto& small = patch30();
    const auto a = vec(oracle::kWs1);
    for (const auto& t : random_small_tuples(emb(), small, 3, 5, 21)) {
        const auto e1 = empirical_coefficient(emb(), small, a, t);
        const auto e2 = empirical_coefficient(emb(), big, a, t);
        const double boundary = 2.0 * std::max(1.0, required_margin(emb(), t)) / small.radius();
        const double allowed = 10.0 * boundary * e2.value + 3.0 * std::hypot(e1.sigma, e2.sigma);
        CHECK(std::abs(e1.value - e2.value) <= allowed);
    }
}

TEST_CASE("translation by a lattice vector") {
    const LatticePoint4 t{{1, 1, 1, -1}};
    REQUIRE(color_of(t) != 0);
    const auto w2 = window().translated(emb().internal_of(t));
    const auto shifted = cutproject::enumerate_patch(emb(), w2, 30.0, 6.0);
    const auto& p = patch30();
    const auto a = vec(oracle::kWs1);
    for (const auto& z : random_small_tuples(emb(), p, 3, 5, 8)) {
        CHECK(analytic_coefficient(emb(), window(), a, z) ==
              doctest::Approx(analytic_coefficient(emb(), w2, a, z)).epsilon(1e-12));
        const auto e1 = empirical_coefficient(emb(), p, a, z);
        const auto e2 = empirical_coefficient(emb(), shifted, a, z);
        CHECK(std::abs(e1.value - e2.value) <= 4 * std::hypot(e1.sigma, e2.sigma) + 0.03 * e1.value);
    }
}
