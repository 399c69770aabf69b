#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "segconn/generator.hpp"
#include "segconn/oracle.hpp"
#include "segconn/param_search.hpp"

using namespace segconn;

namespace {

Instance instance_a() {
    return {{ParamSegment::from_endpoints({0, -1}, {0, 1})}, {{-1, 0}, {1, 0}}};
}

Instance random_instance(std::uint64_t seed, int n, int k) {
    GeneratorOptions g;
    g.n = n;
    g.k = k;
    g.seed = seed;
    g.clusters = 2 + static_cast<int>(seed % 3);
    return generate_instance(g);
}

}  // namespace

TEST_CASE("root_between") {
    const SqrtFunc f = SqrtFunc::node({0, 0, 1, 0, 0, -1}, 1, SqrtFunc::constant(0));
    auto r = root_between(f, SqrtFunc::constant(1), {1, 3});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    CHECK(root_between(f, f, {1, 3}).empty());

    r = root_between(SqrtFunc::linear(1, 0), SqrtFunc::linear(-1, 4), {0, 10});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("refine_among") {
    int calls = 0;
    const Decider dec = [&](double d) {
        ++calls;
        return d >= 2.5;
    };
    auto iv = refine_among({1, 2, 3}, {0, 10}, dec);
    CHECK(iv.lo == 2.0);
    CHECK(iv.hi == 3.0);
    CHECK(calls <= 2);

    iv = refine_among({}, {0, 10}, dec);
    CHECK(iv.lo == 0.0);
    CHECK(iv.hi == 10.0);

    calls = 0;
    iv = refine_among({-3, -1}, {0, 10}, dec);
    CHECK(iv.hi == 10.0);
    CHECK(calls == 0);

    std::vector<double> many;
    for (int i = 0; i < 1000; ++i) {
        many.push_back(i * 0.01);
    }
    calls = 0;
    iv = refine_among(many, {0, 100}, dec);
    CHECK(calls <= 11);
    CHECK(iv.lo == doctest::Approx(2.49));
    CHECK(iv.hi == doctest::Approx(2.5));
}

TEST_CASE("analytic fixtures, both modes") {
    const Preprocessing a = preprocess(instance_a());
    const Preprocessing line = preprocess({{}, {{0, 0}, {1, 0}, {3, 0}}});
    const Preprocessing pt = preprocess({{ParamSegment::from_endpoints({2, 3}, {2, 3})}, {{0, 0}, {4, 0}}});

    CHECK(solve_bisect(a, 1e-9).delta_star == 1.0);
    CHECK(solve_bisect(line, 1e-9).delta_star == 2.0);
    CHECK(std::abs(solve_bisect(pt, 1e-9).delta_star - std::sqrt(13.0)) <= 1e-9);

    const SolveResult pa = solve_parametric(a);
    CHECK(pa.delta_star == 1.0);
    CHECK_FALSE(pa.diagnostics.fallback);
    CHECK(solve_parametric(line).delta_star == 2.0);
    CHECK(std::abs(solve_parametric(pt).delta_star - std::sqrt(13.0)) <= 1e-9);

    CHECK(placement_connected(a, pa.witness, 1.0 + 1e-9));
    CHECK_THROWS_AS(solve_bisect(a, 0.0), std::invalid_argument);
}

TEST_CASE("zero optimum") {
    const Preprocessing p = preprocess({{ParamSegment::from_endpoints({0, 0}, {2, 2})}, {{1, 1}, {1, 1}}});
    CHECK(solve_bisect(p).delta_star == 0.0);
    const SolveResult r = solve_parametric(p);
    CHECK(r.delta_star == 0.0);
    REQUIRE(r.witness.size() == 1);
    CHECK(distance(r.witness[0], {1, 1}) < 1e-9);
}

TEST_CASE("output validity and interval bookkeeping") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Instance inst = random_instance(seed, 8 + static_cast<int>(seed % 8), 1 + static_cast<int>(seed % 2));
        const Preprocessing p = preprocess(inst);
        const SolveResult r = solve_parametric(p);
        CAPTURE(seed);
        CHECK(decide(p, r.delta_star));
        const double below = r.delta_star - std::max(1e-10 * r.delta_star, 1e-10);
        if (below > 0) {
            CHECK_FALSE(decide(p, below));
        }
        // The interval only ever shrinks.
        for (std::size_t i = 1; i < r.diagnostics.trace.size(); ++i) {
            CHECK(r.diagnostics.trace[i].lo >= r.diagnostics.trace[i - 1].lo);
            CHECK(r.diagnostics.trace[i].hi <= r.diagnostics.trace[i - 1].hi);
        }
        const SolveResult b = solve_bisect(p, 1e-10);
        CHECK(std::abs(r.delta_star - b.delta_star) <= 1e-8 * std::max(1.0, b.delta_star));
    }
}

TEST_CASE("every refinement keeps the fine-grid optimum") {
    for (std::uint64_t seed = 200; seed < 215; ++seed) {
        const Instance inst = random_instance(seed, 6 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 2));
        const OracleResult o = oracle_delta_star(inst, 512);
        const SolveResult r = solve_parametric(preprocess(inst));
        CAPTURE(seed);
        for (const DeltaInterval& iv : r.diagnostics.trace) {
            // [value - error, value] must meet (lo, hi].
            CHECK(iv.hi >= o.value - o.error_bound - 1e-9);
            CHECK(iv.lo < o.value + 1e-9);
        }
    }
}
