#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "segconn/sqrt_func.hpp"

using namespace segconn;

TEST_CASE("evaluation") {
    CHECK(SqrtFunc::linear(2, 1).eval(3) == 7.0);
    CHECK(SqrtFunc::linear(2, 1).level() == 0);

    const SqrtFunc f = SqrtFunc::node({0, 0, 1, 0, 0, -1}, 1, SqrtFunc::linear(0, 0));
    CHECK(f.level() == 1);
    CHECK(f.eval(std::sqrt(2.0)) == doctest::Approx(1.0));
    CHECK(f.eval(1.0) == 0.0);
    CHECK_THROWS_AS(f.eval(0.5), std::domain_error);
    CHECK(f.eval_clamped(0.5) == 0.0);
    CHECK_FALSE(f.defined_at(0.5));
    CHECK(f.defined_at(1.0 - 1e-14));

    const SqrtFunc minus = SqrtFunc::node({0, 0, 1, 0, 0, 4}, -1, SqrtFunc::linear(0, 0));
    CHECK(minus.eval(1.0) == doctest::Approx(std::sqrt(3.0)));
    CHECK(SqrtFunc::constant(3).is_constant());
    CHECK_FALSE(f.is_constant());
}

TEST_CASE("circle_track examples") {
    const SqrtFunc zero = SqrtFunc::constant(0);
    const SqrtFunc a = circle_track({0, 1}, {1, 0}, {0.6, 0.8}, zero, 1);
    for (double x : {1.0, 1.5, 3.0}) {
        CHECK(a.eval(x) == doctest::Approx(std::sqrt(x * x - 1)));
    }
    const SqrtFunc b = circle_track({0, 0}, {1, 0}, {1, 0}, zero, -1);
    CHECK(b.eval(2.5) == doctest::Approx(-2.5));

    // |q + t e| = 5 with q = (3, 4): roots t = 0 and t = -6.
    CHECK(circle_track({3, 4}, {1, 0}, {1, 0}, zero, 1).eval(5) == doctest::Approx(0.0));
    CHECK(circle_track({3, 4}, {1, 0}, {1, 0}, zero, -1).eval(5) == doctest::Approx(-6.0));
    // The mirrored point gives the root 6 on the upper branch.
    CHECK(circle_track({-3, -4}, {1, 0}, {1, 0}, zero, 1).eval(5) == doctest::Approx(6.0));
}

TEST_CASE("circle_track solves its equation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    int checked = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const double pe = u(rng);
        const double pf = u(rng);
        const Point e{std::cos(pe), std::sin(pe)};
        const Point f{std::cos(pf), std::sin(pf)};
        const Point q{u(rng), u(rng)};
        // Inner function of level 1 or 2.
        SqrtFunc g = SqrtFunc::linear(u(rng) / 3, u(rng));
        if (rep % 2) {
            g = circle_track({u(rng), u(rng)}, f, e, g, 1);
        }
        const int branch = rep % 4 < 2 ? 1 : -1;
        const SqrtFunc t = circle_track(q, e, f, g, branch);
        CHECK(t.level() == g.level() + 1);
        for (int s = 0; s < 100; ++s) {
            const double x = 20.0 * (s + 1) / 100;
            if (!g.defined_at(x) || !t.defined_at(x)) {
                continue;
            }
            const double tv = t.eval(x);
            const double gv = g.eval(x);
            const double lhs = norm(q + tv * e - gv * f);
            CHECK(std::abs(lhs - x) <= 1e-8 * std::max(1.0, x));
            ++checked;
        }
    }
    // Some draws have an empty domain on (0, 20]; most do not.
    CHECK(checked > 2000);
}
