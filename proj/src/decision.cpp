#include "segconn/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace segconn {

namespace {

constexpr double kZeroTolerance = 1e-9;

Point closest_on(const ParamSegment& s, Point q) {
    const double t = std::clamp(dot(q - s.anchor, s.dir), s.lo, s.hi);
    return s.at(t);
}

// Lazily built Z sets and segment proximity for one delta.
class Evaluator {
public:
    Evaluator(const Preprocessing& prep, double delta)
        : prep_(prep),
          radius_(slack_radius(delta)),
          family_(prep.families[prep.family_index(radius_)]),
          k_(prep.k()),
          z_(k_ * family_.size()),
          z_ready_(k_ * family_.size(), 0),
          close_(k_ * k_, -1) {}

    int ell() const { return static_cast<int>(family_.size()); }
    double radius() const { return radius_; }

    const Segmentation& z(std::size_t seg, std::size_t comp) {
        const std::size_t slot = seg * family_.size() + comp;
        if (!z_ready_[slot]) {
            const VoronoiOnSegment& vor = prep_.voronoi[family_[comp]][seg];
            z_[slot] = intersect_union_disks_segment(vor, radius_, prep_.instance.segments[seg]);
            z_ready_[slot] = 1;
        }
        return z_[slot];
    }

    bool segments_close(std::size_t a, std::size_t b) {
        signed char& c = close_[a * k_ + b];
        if (c < 0) {
            const ParamSegment& s = prep_.instance.segments[a];
            const ParamSegment& t = prep_.instance.segments[b];
            c = segment_segment_distance(s.start(), s.end(), t.start(), t.end()) <= radius_ ? 1 : 0;
        }
        return c == 1;
    }

    bool allowed(int u, int v) {
        if (v < static_cast<int>(k_)) {
            return segments_close(u, v);
        }
        return !z(u, v - k_).empty();
    }

    // Bottom-up sets for every significant subtree; false on the first empty one.
    bool compute(const TopologyTree& tree, std::vector<Segmentation>& x) {
        x.assign(k_, Segmentation{});
        for (const SignificantSubtree& sub : decompose_significant(tree)) {
            for (int s : sub.segment_nodes) {
                const ParamSegment& seg = prep_.instance.segments[s];
                Segmentation cur = Segmentation::whole(seg);
                for (int c : sub.segment_children[s]) {
                    cur = intersect_segmentations(
                        cur, intersect_neighborhood_segmentation_segment(x[c], radius_, seg));
                    if (cur.empty()) {
                        return false;
                    }
                }
                for (int c : sub.component_children[s]) {
                    cur = intersect_segmentations(cur, z(s, c - k_));
                    if (cur.empty()) {
                        return false;
                    }
                }
                x[s] = std::move(cur);
            }
        }
        return true;
    }

private:
    const Preprocessing& prep_;
    double radius_;
    const std::vector<std::size_t>& family_;
    std::size_t k_;
    std::vector<Segmentation> z_;
    std::vector<char> z_ready_;
    std::vector<signed char> close_;
};

Point pick_near(const Segmentation& x, const ParamSegment& seg, Point center, double radius) {
    for (const Interval& iv : x.intervals) {
        if (auto hit = intersect_disk_segment(center, radius, seg.with_range(iv.lo, iv.hi))) {
            return hit->start();
        }
    }
    Point best = seg.at(x.intervals.front().lo);
    double best_d = std::numeric_limits<double>::infinity();
    for (const Interval& iv : x.intervals) {
        const Point p = closest_on(seg.with_range(iv.lo, iv.hi), center);
        const double d = distance(p, center);
        if (d < best_d) {
            best_d = d;
            best = p;
        }
    }
    return best;
}

std::vector<Point> witness_from(const Preprocessing& prep, const TopologyTree& tree,
                                const std::vector<Segmentation>& x, double radius) {
    std::vector<Point> out(prep.k());
    for (const SignificantSubtree& sub : decompose_significant(tree)) {
        for (auto it = sub.segment_nodes.rbegin(); it != sub.segment_nodes.rend(); ++it) {
            const int s = *it;
            const ParamSegment& seg = prep.instance.segments[s];
            if (sub.parent[s] < 0) {
                out[s] = seg.at(x[s].intervals.front().lo);
            } else {
                out[s] = pick_near(x[s], seg, out[sub.parent[s]], radius * (1.0 + 1e-10));
            }
        }
    }
    return out;
}

void check_tree(const Evaluator& ev, const Preprocessing& prep, const TopologyTree& tree) {
    if (tree.k != static_cast<int>(prep.k()) || tree.ell != ev.ell() || !is_valid_topology_tree(tree)) {
        throw std::invalid_argument("topology tree does not match the components at this delta");
    }
}

}  // namespace

std::size_t Preprocessing::family_index(double radius) const {
    const auto it = std::partition_point(top_edges.begin(), top_edges.end(),
                                         [&](double len) { return len > radius; });
    return std::min<std::size_t>(it - top_edges.begin(), families.size() - 1);
}

bool Preprocessing::too_many_components(double radius) const {
    return top_edges.size() == 4 * k() + 1 && top_edges.back() > radius;
}

Preprocessing preprocess(const Instance& instance) {
    validate(instance);
    Preprocessing prep;
    prep.instance = instance;
    prep.mst = compute_emst(instance.points);
    const std::size_t k = instance.k();
    const std::size_t fixed = instance.points.size();
    prep.top_edges = longest_edges(prep.mst, std::min(fixed - 1, 4 * k + 1));

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pool;
    const std::size_t family_count = std::min(4 * k, fixed - 1) + 1;
    for (std::size_t i = 0; i < family_count; ++i) {
        DisjointSets sets(fixed);
        for (std::size_t e = i; e < prep.mst.edges.size(); ++e) {
            sets.unite(prep.mst.edges[e].i, prep.mst.edges[e].j);
        }
        std::vector<std::vector<std::size_t>> parts;
        std::vector<std::size_t> slot(fixed, std::numeric_limits<std::size_t>::max());
        for (std::size_t v = 0; v < fixed; ++v) {
            const std::size_t r = sets.find(v);
            if (slot[r] == std::numeric_limits<std::size_t>::max()) {
                slot[r] = parts.size();
                parts.emplace_back();
            }
            parts[slot[r]].push_back(v);
        }
        std::vector<std::size_t> family;
        for (auto& part : parts) {
            const auto key = std::make_pair(part.front(), part.size());
            auto [it, fresh] = pool.try_emplace(key, prep.components.size());
            if (fresh) {
                prep.components.push_back(std::move(part));
            }
            family.push_back(it->second);
        }
        prep.families.push_back(std::move(family));
    }

    if (k > 0) {
        prep.voronoi.resize(prep.components.size());
        std::vector<Point> sites;
        for (std::size_t c = 0; c < prep.components.size(); ++c) {
            sites.clear();
            for (std::size_t v : prep.components[c]) {
                sites.push_back(instance.points[v]);
            }
            for (const ParamSegment& seg : instance.segments) {
                prep.voronoi[c].push_back(voronoi_on_segment(sites, seg));
            }
        }
    }
    return prep;
}

bool decide_zero(const Instance& instance) {
    if (instance.points.empty()) {
        return false;
    }
    const Point p0 = instance.points.front();
    for (const Point& p : instance.points) {
        if (distance(p, p0) > kZeroTolerance) {
            return false;
        }
    }
    for (const ParamSegment& s : instance.segments) {
        if (point_segment_distance(p0, s.start(), s.end()) > kZeroTolerance) {
            return false;
        }
    }
    return true;
}

Decision decide_full(const Preprocessing& prep, double delta, bool want_witness) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("delta must be finite and non-negative");
    }
    Decision out;
    if (delta == 0.0) {
        out.feasible = decide_zero(prep.instance);
        if (out.feasible && want_witness) {
            for (const ParamSegment& s : prep.instance.segments) {
                out.witness.push_back(closest_on(s, prep.instance.points.front()));
            }
        }
        return out;
    }
    const double radius = slack_radius(delta);
    if (prep.too_many_components(radius)) {
        return out;
    }
    const std::size_t k = prep.k();
    if (k == 0) {
        out.feasible = prep.family_index(radius) == 0;
        return out;
    }

    Evaluator ev(prep, delta);
    std::vector<Segmentation> x;
    for_each_topology_tree(
        static_cast<int>(k), ev.ell(),
        [&](const TopologyTree& tree) {
            ++out.trees_tried;
            if (ev.compute(tree, x)) {
                out.feasible = true;
                out.tree = tree;
                return false;
            }
            return true;
        },
        [&](int u, int v) { return ev.allowed(u, v); });

    if (out.feasible && want_witness) {
        out.witness = witness_from(prep, *out.tree, x, radius);
    }
    return out;
}

bool decide(const Preprocessing& prep, double delta) { return decide_full(prep, delta).feasible; }

Segmentation compute_node_set(const ParamSegment& seg, double radius,
                              std::span<const Segmentation> child_sets,
                              std::span<const VoronoiOnSegment* const> component_diagrams) {
    Segmentation cur = Segmentation::whole(seg);
    for (const Segmentation& child : child_sets) {
        cur = intersect_segmentations(cur, intersect_neighborhood_segmentation_segment(child, radius, seg));
    }
    for (const VoronoiOnSegment* vor : component_diagrams) {
        cur = intersect_segmentations(cur, intersect_union_disks_segment(*vor, radius, seg));
    }
    return cur;
}

bool realizable(const Preprocessing& prep, const TopologyTree& tree, double delta) {
    Evaluator ev(prep, delta);
    check_tree(ev, prep, tree);
    std::vector<Segmentation> x;
    return ev.compute(tree, x);
}

std::vector<Point> extract_witness(const Preprocessing& prep, const TopologyTree& tree, double delta) {
    Evaluator ev(prep, delta);
    check_tree(ev, prep, tree);
    std::vector<Segmentation> x;
    if (!ev.compute(tree, x)) {
        throw std::invalid_argument("topology tree is not realizable at this delta");
    }
    return witness_from(prep, tree, x, ev.radius());
}

bool placement_connected(const Preprocessing& prep, std::span<const Point> placement, double delta) {
    return placement_bottleneck(prep.mst, placement) <= delta;
}

}  // namespace segconn
