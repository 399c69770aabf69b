#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "segconn/geometry.hpp"

namespace segconn {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

struct MstEdge {
    std::size_t i = 0;  // i < j
    std::size_t j = 0;
    double length = 0.0;
};

/// Euclidean MST; edges sorted by descending length (ties by ascending i, j).
struct Mst {
    std::vector<Point> points;
    std::vector<MstEdge> edges;

    double bottleneck() const { return edges.empty() ? 0.0 : edges.front().length; }
};

/// O(n^2) Prim over the complete graph, ties broken by (length, i, j).
/// Throws std::invalid_argument on an empty point set.
Mst compute_emst(std::span<const Point> points);

struct ComponentSet {
    std::vector<std::vector<std::size_t>> parts;  // each ascending; parts ordered by first index
    double threshold = 0.0;
};

/// Components of the MST restricted to edges of length <= delta.
ComponentSet split_components(const Mst& mst, double delta);

/// The min(m, n - 1) largest edge lengths, descending.
std::vector<double> longest_edges(const Mst& mst, std::size_t m);

/// Bottleneck of the MST of `mst.points` plus `extra`, reusing the MST edges
/// of the fixed points.
double placement_bottleneck(const Mst& mst, std::span<const Point> extra);

}  // namespace segconn
