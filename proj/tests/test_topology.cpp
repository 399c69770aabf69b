#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "segconn/topology.hpp"

using namespace segconn;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList from_pruefer(const std::vector<int>& code, int n) {
    std::vector<int> degree(n, 1);
    for (int v : code) {
        ++degree[v];
    }
    EdgeList edges;
    for (int v : code) {
        for (int leaf = 0; leaf < n; ++leaf) {
            if (degree[leaf] == 1) {
                edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
                --degree[leaf];
                --degree[v];
                break;
            }
        }
    }
    int u = -1;
    for (int v = 0; v < n; ++v) {
        if (degree[v] == 1) {
            if (u < 0) {
                u = v;
            } else {
                edges.emplace_back(u, v);
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Every labeled tree on k + ell nodes passing the topology constraints.
std::set<EdgeList> brute_force(int k, int ell) {
    const int n = k + ell;
    std::set<EdgeList> out;
    if (n == 2) {
        out.insert({{0, 1}});
        return out;
    }
    std::vector<int> code(n - 2, 0);
    while (true) {
        TopologyTree t{k, ell, from_pruefer(code, n)};
        if (is_valid_topology_tree(t)) {
            out.insert(t.edges);
        }
        int i = 0;
        while (i < n - 2 && code[i] == n - 1) {
            code[i++] = 0;
        }
        if (i == n - 2) {
            break;
        }
        ++code[i];
    }
    return out;
}

}  // namespace

TEST_CASE("small enumerations") {
    auto t = enumerate_topology_trees(1, 2);
    REQUIRE(t.size() == 1);
    CHECK(t[0].to_string() == "s1-C1 s1-C2");

    t = enumerate_topology_trees(1, 1);
    REQUIRE(t.size() == 1);
    CHECK(t[0].to_string() == "s1-C1");

    t = enumerate_topology_trees(2, 1);
    CHECK(t.size() == 3);
}

TEST_CASE("enumeration matches Pruefer brute force") {
    for (int k = 1; k <= 4; ++k) {
        for (int ell = 1; ell <= 4 * k + 1 && k + ell <= 8; ++ell) {
            const auto trees = enumerate_topology_trees(k, ell);
            std::set<EdgeList> seen;
            for (const auto& tr : trees) {
                CHECK(is_valid_topology_tree(tr));
                CHECK(std::is_sorted(tr.edges.begin(), tr.edges.end()));
                seen.insert(tr.edges);
            }
            CAPTURE(k);
            CAPTURE(ell);
            CHECK(seen.size() == trees.size());
            CHECK(seen == brute_force(k, ell));
        }
    }
}

TEST_CASE("degree cap excludes a six-leaf star") {
    // k = 1, ell = 5 is the largest star allowed.
    CHECK(enumerate_topology_trees(1, 5).size() == 1);
    CHECK_THROWS_AS(enumerate_topology_trees(1, 6), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_topology_trees(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_topology_trees(1, 0), std::invalid_argument);
}

TEST_CASE("edge filter and early stop") {
    // Forbid s1-C1: the only trees left attach C1 through s2.
    std::vector<TopologyTree> kept;
    for_each_topology_tree(
        2, 2,
        [&](const TopologyTree& t) {
            kept.push_back(t);
            return true;
        },
        [](int u, int v) { return !(u == 0 && v == 2); });
    const auto all = enumerate_topology_trees(2, 2);
    std::size_t expected = 0;
    for (const auto& t : all) {
        expected += std::find(t.edges.begin(), t.edges.end(), std::make_pair(0, 2)) == t.edges.end();
    }
    CHECK(kept.size() == expected);

    int visits = 0;
    for_each_topology_tree(2, 3, [&](const TopologyTree&) { return ++visits < 2; });
    CHECK(visits == 2);
}

TEST_CASE("decompose_significant") {
    // Two subtrees sharing C3.
    TopologyTree t{3, 4, {{0, 1}, {0, 3}, {1, 4}, {1, 5}, {2, 5}, {2, 6}}};
    REQUIRE(is_valid_topology_tree(t));
    auto subs = decompose_significant(t);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].root == 0);
    CHECK(subs[0].component_nodes == std::vector<int>{3, 4, 5});
    CHECK(subs[0].segment_nodes.size() == 2);
    CHECK(subs[0].segment_nodes.back() == 0);
    CHECK(subs[0].height[0] == 2);
    CHECK(subs[1].root == 2);
    CHECK(subs[1].component_nodes == std::vector<int>{5, 6});

    TopologyTree path{1, 2, {{0, 1}, {0, 2}}};
    subs = decompose_significant(path);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].edges == path.edges);

    TopologyTree star{1, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}};
    subs = decompose_significant(star);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].edges == star.edges);
    CHECK(subs[0].height[0] == 1);
}

TEST_CASE("decomposition covers every edge once") {
    for (int k = 1; k <= 3; ++k) {
        for (int ell = 1; ell <= 4; ++ell) {
            for_each_topology_tree(k, ell, [&](const TopologyTree& t) {
                const auto subs = decompose_significant(t);
                EdgeList all;
                std::vector<int> owner(k, 0);
                for (const auto& s : subs) {
                    all.insert(all.end(), s.edges.begin(), s.edges.end());
                    for (int v : s.segment_nodes) {
                        ++owner[v];
                    }
                    for (int c : s.component_nodes) {
                        int deg = 0;
                        for (const auto& [u, v] : s.edges) {
                            deg += (u == c) + (v == c);
                        }
                        CHECK(deg == 1);
                    }
                    // Children always precede their parent.
                    std::vector<int> pos(k + ell, -1);
                    for (std::size_t i = 0; i < s.segment_nodes.size(); ++i) {
                        pos[s.segment_nodes[i]] = static_cast<int>(i);
                    }
                    for (int v : s.segment_nodes) {
                        if (s.parent[v] >= 0) {
                            CHECK(pos[v] < pos[s.parent[v]]);
                        }
                    }
                }
                std::sort(all.begin(), all.end());
                CHECK(all == t.edges);
                CHECK(std::all_of(owner.begin(), owner.end(), [](int c) { return c == 1; }));
                CHECK(subs.size() <= static_cast<std::size_t>(k));
                return true;
            });
        }
    }
}
