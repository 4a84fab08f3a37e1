#include <doctest.h>

#include "oracles.hpp"
#include "wmc/errors.hpp"
#include "wmc/window.hpp"

using namespace wmc;
using namespace wmc::cutproject;

TEST_CASE("dodecagon geometry") {
    auto w = ConvexWindow::regular_dodecagon(1.0, Vec2(0.3, -0.2));
    CHECK(w.vertices().size() == 12);
    for (const auto& v : w.vertices()) CHECK(std::abs((v - Vec2(0.3, -0.2)).norm() - 1.0) < 1e-12);
    CHECK(w.area() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(ConvexWindow::regular_dodecagon(2.5, Vec2::Zero()).area() == doctest::Approx(3.0 * 6.25).epsilon(1e-14));
    CHECK(w.dodecagon().has_value());
}

TEST_CASE("window validation") {
    CHECK_THROWS_AS(ConvexWindow({Vec2(0, 0), Vec2(1, 0)}), ValidationError);
    CHECK_THROWS_AS(ConvexWindow({Vec2(0, 0), Vec2(0, 1), Vec2(1, 0)}), ValidationError);  // clockwise
    CHECK_THROWS_AS(ConvexWindow({Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)}), ValidationError);  // zero area
    CHECK_THROWS_AS(ConvexWindow({Vec2(0, 0), Vec2(2, 0), Vec2(1, 0.2), Vec2(2, 2), Vec2(0, 2)}), ValidationError);
    CHECK_THROWS_AS(ConvexWindow::regular_dodecagon(0.0, Vec2::Zero()), ValidationError);
    CHECK_NOTHROW(ConvexWindow({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}));
}

TEST_CASE("containment") {
    auto w = ConvexWindow::regular_dodecagon(1.0, Vec2::Zero());
    CHECK(window_contains(w, Vec2(0, 0)) == Location::Inside);
    CHECK(window_contains(w, Vec2(2, 0)) == Location::Outside);
    CHECK(window_contains(w, w.vertices()[3]) == Location::BoundaryNear);
    const Vec2 mid = 0.5 * (w.vertices()[0] + w.vertices()[1]);
    CHECK(window_contains(w, mid) == Location::BoundaryNear);
    CHECK(window_contains(w, mid * (1 + 1e-6)) == Location::Outside);
    CHECK(window_contains(w, mid * (1 - 1e-6)) == Location::Inside);
}

TEST_CASE("containment against the half-plane oracle") {
    auto w = ConvexWindow::regular_dodecagon(1.3, Vec2(0.2, 0.1));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.6, 1.6);
    for (int i = 0; i < 20000; ++i) {
        Vec2 p(u(rng), u(rng));
        auto loc = window_contains(w, p);
        if (loc == Location::BoundaryNear) continue;
        CHECK((loc == Location::Inside) == oracle::in_dodecagon(p.x(), p.y(), 1.3, 0.2, 0.1));
    }
}

TEST_CASE("intersection areas") {
    auto w = ConvexWindow::regular_dodecagon(1.0, Vec2::Zero());
    CHECK(window_intersection_area(w, {}) == doctest::Approx(3.0));
    std::vector<Vec2> far{Vec2(3, 0)};
    CHECK(window_intersection_area(w, far) == 0.0);
    std::vector<Vec2> twice{Vec2(0.3, 0.1), Vec2(0.3, 0.1)};
    std::vector<Vec2> once{Vec2(0.3, 0.1)};
    CHECK(window_intersection_area(w, twice) == doctest::Approx(window_intersection_area(w, once)).epsilon(1e-14));
    std::vector<Vec2> nine(9, Vec2(0.1, 0));
    CHECK_THROWS_AS(window_intersection_area(w, nine), ValidationError);
}

TEST_CASE("area decreases with the shift length") {
    auto w = ConvexWindow::regular_dodecagon(1.0, Vec2::Zero());
    double prev = w.area();
    for (int i = 1; i <= 15; ++i) {
        std::vector<Vec2> s{Vec2(0.1 * i, 0.04 * i)};
        const double a = window_intersection_area(w, s);
        CHECK(a < prev);
        prev = a;
    }
}

TEST_CASE("intersection area against Monte-Carlo") {
    auto w = ConvexWindow::regular_dodecagon(1.0, Vec2(0.27, 0.31));
    const Vec2 v1(0.4, -0.25), v2(-0.1, 0.35);
    std::vector<Vec2> shifts{v1, v2};
    const double exact = window_intersection_area(w, shifts);
    auto [mc, sigma] = oracle::monte_carlo_area(-1.0, 1.6, -1.0, 1.6, 10'000'000, 42, [&](double x, double y) {
        return oracle::in_dodecagon(x, y, 1.0, 0.27, 0.31) && oracle::in_dodecagon(x + v1.x(), y + v1.y(), 1.0, 0.27, 0.31) &&
               oracle::in_dodecagon(x + v2.x(), y + v2.y(), 1.0, 0.27, 0.31);
    });
    CHECK(std::abs(exact - mc) <= 3 * sigma);
    CHECK(sigma < 1e-3);
}

TEST_CASE("clipping and translation") {
    Polygon square{Vec2(0, 0), Vec2(2, 0), Vec2(2, 2), Vec2(0, 2)};
    Polygon shifted{Vec2(1, 1), Vec2(3, 1), Vec2(3, 3), Vec2(1, 3)};
    CHECK(signed_area(clip_convex(square, shifted)) == doctest::Approx(1.0));
    CHECK(signed_area(square) == doctest::Approx(4.0));
    auto w = ConvexWindow(square).translated(Vec2(1, -1));
    CHECK(w.min_corner().x() == doctest::Approx(1.0));
    CHECK(w.max_corner().y() == doctest::Approx(1.0));
    CHECK(w.depth(Vec2(2, 0)) == doctest::Approx(1.0));
}
