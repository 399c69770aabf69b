#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "segconn/decision.hpp"
#include "segconn/generator.hpp"
#include "segconn/oracle.hpp"

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
    g.clusters = 1 + static_cast<int>(seed % 4);
    return generate_instance(g);
}

}  // namespace

TEST_CASE("preprocess") {
    Instance inst{{ParamSegment::from_endpoints({0, 1}, {1, 1})}, {{0, 0}, {1, 0}, {3, 0}}};
    const Preprocessing p = preprocess(inst);
    CHECK(p.top_edges == std::vector<double>{2, 1});
    REQUIRE(p.families.size() == 3);
    CHECK(p.families[0].size() == 1);
    CHECK(p.families[1].size() == 2);
    CHECK(p.families[2].size() == 3);
    // {2} appears in two families but is stored once.
    CHECK(p.components.size() == 5);
    REQUIRE(p.voronoi.size() == p.components.size());
    for (const auto& per_seg : p.voronoi) {
        CHECK(per_seg.size() == 1);
    }
    // Families refine as more edges are removed.
    for (std::size_t i = 1; i < p.families.size(); ++i) {
        for (std::size_t c : p.families[i]) {
            const auto& part = p.components[c];
            bool inside_one = false;
            for (std::size_t d : p.families[i - 1]) {
                const auto& parent = p.components[d];
                inside_one |= std::includes(parent.begin(), parent.end(), part.begin(), part.end());
            }
            CHECK(inside_one);
        }
    }

    const Preprocessing none = preprocess({{}, {{0, 0}, {1, 0}, {3, 0}}});
    CHECK(none.voronoi.empty());
    CHECK(none.top_edges == std::vector<double>{2});

    const Preprocessing single = preprocess({{ParamSegment::from_endpoints({0, 1}, {1, 1})}, {{0, 0}}});
    CHECK(single.mst.edges.empty());
    CHECK(single.families.size() == 1);

    CHECK_THROWS_AS(preprocess({{}, {}}), std::invalid_argument);
}

TEST_CASE("decide_zero") {
    CHECK(decide_zero({{ParamSegment::from_endpoints({0, 0}, {2, 2})}, {{1, 1}}}));
    CHECK_FALSE(decide_zero({{}, {{0, 0}, {1, 0}}}));
    CHECK_FALSE(decide_zero({{ParamSegment::from_endpoints({-1, 1}, {1, 1})}, {{0, 0}}}));
}

TEST_CASE("decide examples") {
    const Preprocessing a = preprocess(instance_a());
    CHECK(decide(a, 1.0));
    CHECK_FALSE(decide(a, 0.9));
    CHECK_FALSE(decide(a, 0.0));

    const Preprocessing line = preprocess({{}, {{0, 0}, {1, 0}, {3, 0}}});
    CHECK(decide(line, 2.0));
    CHECK_FALSE(decide(line, 1.9));

    Instance far{{ParamSegment::from_endpoints({0, 0}, {1, 0})}, {}};
    for (int i = 0; i < 6; ++i) {
        far.points.push_back({100.0 * i, 500.0});
    }
    const Decision d = decide_full(preprocess(far), 1.0);
    CHECK_FALSE(d.feasible);
    CHECK(d.trees_tried == 0);

    CHECK_THROWS_AS(decide(a, -1.0), std::invalid_argument);
}

TEST_CASE("compute_node_set") {
    const ParamSegment seg = ParamSegment::from_endpoints({0, -5}, {0, 5});
    const std::vector<Point> comp{{-1, 0}, {1, 0}};
    const VoronoiOnSegment vor = voronoi_on_segment(comp, seg);
    const VoronoiOnSegment* diagrams[] = {&vor};

    const Segmentation leaf = compute_node_set(seg, 1.0, {}, {});
    REQUIRE(leaf.size() == 1);
    CHECK(leaf.intervals[0] == Interval{seg.lo, seg.hi});

    const Segmentation x = compute_node_set(seg, std::sqrt(2.0), {}, diagrams);
    REQUIRE(x.size() == 1);
    // Parameter 5 is y = 0 on this segment.
    CHECK(x.intervals[0].lo == doctest::Approx(4.0));
    CHECK(x.intervals[0].hi == doctest::Approx(6.0));

    CHECK(compute_node_set(seg, 0.5, {}, diagrams).empty());
}

TEST_CASE("realizable and extract_witness") {
    const Preprocessing a = preprocess(instance_a());
    const TopologyTree path{1, 2, {{0, 1}, {0, 2}}};
    CHECK(realizable(a, path, 1.0));
    CHECK_FALSE(realizable(a, path, 0.9));
    CHECK_THROWS_AS(realizable(a, TopologyTree{1, 1, {{0, 1}}}, 1.0), std::invalid_argument);

    const auto w = extract_witness(a, path, 1.0);
    REQUIRE(w.size() == 1);
    CHECK(distance(w[0], {0, 0}) < 1e-5);
    CHECK(placement_connected(a, w, 1.0 * (1 + 1e-9)));
    CHECK_THROWS_AS(extract_witness(a, path, 0.9), std::invalid_argument);

    const Preprocessing pts = preprocess({{}, {{0, 0}, {1, 0}}});
    const Decision d = decide_full(pts, 1.0, true);
    CHECK(d.feasible);
    CHECK(d.witness.empty());
}

TEST_CASE("decide agrees with the oracle away from its value") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int k = 1 + static_cast<int>(seed % 2);
        const Instance inst = random_instance(seed, 6 + static_cast<int>(seed % 14), k);
        const OracleResult o = oracle_delta_star(inst, 64);
        const Preprocessing p = preprocess(inst);
        CAPTURE(seed);
        CHECK(decide(p, o.value));
        const double below = o.value - o.error_bound - 1e-6;
        if (below > 0) {
            CHECK_FALSE(decide(p, below));
        }
    }
}

TEST_CASE("monotone in delta, witnesses connect") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const Instance inst = random_instance(seed, 12, 1 + static_cast<int>(seed % 2));
        const Preprocessing p = preprocess(inst);
        const double top = 2.0 * oracle_delta_star(inst, 32).value;
        bool seen_true = false;
        for (int i = 1; i <= 40; ++i) {
            const double delta = top * i / 40;
            const Decision d = decide_full(p, delta, true);
            if (seen_true) {
                CHECK(d.feasible);
            }
            if (d.feasible) {
                seen_true = true;
                CHECK(placement_connected(p, d.witness, delta * (1 + 1e-9)));
            }
        }
        CHECK(seen_true);
    }
}

TEST_CASE("node sets grow with delta and stay small") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<Point> comp(8);
        for (auto& q : comp) {
            q = {u(rng), u(rng)};
        }
        const ParamSegment seg = ParamSegment::from_endpoints({u(rng), u(rng)}, {u(rng), u(rng)});
        const ParamSegment other = ParamSegment::from_endpoints({u(rng), u(rng)}, {u(rng), u(rng)});
        const VoronoiOnSegment vor = voronoi_on_segment(comp, seg);
        const VoronoiOnSegment* diagrams[] = {&vor};
        const double d1 = 0.5 + std::abs(u(rng)) / 2;
        const double d2 = d1 + 0.25;
        const Segmentation child1 = compute_node_set(other, d1, {}, {});
        const Segmentation child2 = compute_node_set(other, d2, {}, {});
        const Segmentation x1 = compute_node_set(seg, d1, std::span(&child1, 1), diagrams);
        const Segmentation x2 = compute_node_set(seg, d2, std::span(&child2, 1), diagrams);
        CHECK(x1.size() <= comp.size() + 1);
        for (int s = 0; s <= 300; ++s) {
            const double t = seg.lo + (seg.hi - seg.lo) * s / 300;
            if (x1.contains(t)) {
                CHECK(x2.contains(t, 1e-9));
            }
        }
    }
}
