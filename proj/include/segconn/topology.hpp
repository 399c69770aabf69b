#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace segconn {

inline constexpr int kMaxSegmentDegree = 5;

/// Abstract tree on segment nodes `0..k-1` and component nodes `k..k+ell-1`.
/// Edges are stored as (u, v) with u < v, sorted.
struct TopologyTree {
    int k = 0;
    int ell = 0;
    std::vector<std::pair<int, int>> edges;

    int node_count() const { return k + ell; }
    bool is_segment(int v) const { return v < k; }
    /// "s1", "C2", ... with 1-based numbering per node kind.
    std::string label(int v) const;
    std::string to_string() const;

    friend bool operator==(const TopologyTree&, const TopologyTree&) = default;
};

/// Spanning tree, segment degree <= 5, no component-component edge.
bool is_valid_topology_tree(const TopologyTree& tree);

/// Optional filter on candidate edges (u < v); trees using a rejected edge are
/// skipped without being built.
using EdgeFilter = std::function<bool(int u, int v)>;

/// Visits every topology tree on (k, ell) once, in a fixed order, until
/// `visit` returns false. Throws std::invalid_argument unless k >= 1 and
/// 1 <= ell <= 4k + 1.
void for_each_topology_tree(int k, int ell, const std::function<bool(const TopologyTree&)>& visit,
                            const EdgeFilter& allowed = {});

std::vector<TopologyTree> enumerate_topology_trees(int k, int ell);

/// A maximal piece of a topology tree between component nodes, rooted at its
/// lowest segment node. Per-node arrays are indexed by node id over the whole
/// tree; nodes outside the subtree have parent -2.
struct SignificantSubtree {
    int root = 0;
    std::vector<int> segment_nodes;    // post-order (children before parents)
    std::vector<int> component_nodes;  // ascending
    std::vector<std::pair<int, int>> edges;
    std::vector<int> parent;           // -1 for the root
    std::vector<std::vector<int>> segment_children;
    std::vector<std::vector<int>> component_children;
    std::vector<int> height;           // segment nodes only

    bool contains(int v) const { return parent[v] != -2; }
};

std::vector<SignificantSubtree> decompose_significant(const TopologyTree& tree);

}  // namespace segconn
