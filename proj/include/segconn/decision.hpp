#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "segconn/emst.hpp"
#include "segconn/geometry.hpp"
#include "segconn/instance.hpp"
#include "segconn/topology.hpp"

namespace segconn {

/// Radius actually used for "distance <= delta" tests.
inline double slack_radius(double delta) { return delta * (1.0 + 1e-12) + 1e-15; }

/// Everything about an instance that does not depend on delta.
struct Preprocessing {
    Instance instance;
    Mst mst;
    /// The min(n - k - 1, 4k + 1) longest MST edges, descending.
    std::vector<double> top_edges;
    /// Distinct components over all families; point index lists, ascending.
    std::vector<std::vector<std::size_t>> components;
    /// families[i]: pool ids of the components of T minus its i longest
    /// edges, ordered by smallest point index.
    std::vector<std::vector<std::size_t>> families;
    /// voronoi[c][j]: diagram of component c on segment j.
    std::vector<std::vector<VoronoiOnSegment>> voronoi;

    std::size_t k() const { return instance.segments.size(); }
    /// Number of MST edges longer than `radius`, capped at top_edges.size().
    std::size_t family_index(double radius) const;
    /// True when more than 4k + 1 components remain at `radius`.
    bool too_many_components(double radius) const;
};

Preprocessing preprocess(const Instance& instance);

/// All fixed points coincide and lie on every segment (1e-9 tolerance).
bool decide_zero(const Instance& instance);

struct Decision {
    bool feasible = false;
    std::optional<TopologyTree> tree;  // accepting tree when k >= 1 and delta > 0
    std::vector<Point> witness;        // filled when requested and feasible
    std::size_t trees_tried = 0;
};

Decision decide_full(const Preprocessing& prep, double delta, bool want_witness = false);
bool decide(const Preprocessing& prep, double delta);

/// Feasible set of one segment node given its children's sets and the
/// diagrams of its component children.
Segmentation compute_node_set(const ParamSegment& seg, double radius,
                              std::span<const Segmentation> child_sets,
                              std::span<const VoronoiOnSegment* const> component_diagrams);

/// `tree` must have as many component nodes as there are components at
/// delta; throws std::invalid_argument otherwise.
bool realizable(const Preprocessing& prep, const TopologyTree& tree, double delta);

/// One point per segment; throws std::invalid_argument if the tree is not
/// realizable at delta.
std::vector<Point> extract_witness(const Preprocessing& prep, const TopologyTree& tree, double delta);

/// Whether fixed points plus `placement` form a connected graph at `delta`.
bool placement_connected(const Preprocessing& prep, std::span<const Point> placement, double delta);

}  // namespace segconn
