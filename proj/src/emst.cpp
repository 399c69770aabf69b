#include "segconn/emst.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace segconn {

namespace {

struct Key {
    double d2 = std::numeric_limits<double>::infinity();
    std::size_t a = std::numeric_limits<std::size_t>::max();
    std::size_t b = std::numeric_limits<std::size_t>::max();

    bool operator<(const Key& o) const { return std::tie(d2, a, b) < std::tie(o.d2, o.a, o.b); }
};

Key make_key(const std::vector<Point>& pts, std::size_t u, std::size_t v) {
    return {norm2(pts[u] - pts[v]), std::min(u, v), std::max(u, v)};
}

}  // namespace

Mst compute_emst(std::span<const Point> points) {
    if (points.empty()) {
        throw std::invalid_argument("compute_emst needs at least one point");
    }
    Mst mst;
    mst.points.assign(points.begin(), points.end());
    const std::size_t n = mst.points.size();
    std::vector<Key> best(n);
    std::vector<char> done(n, 0);
    done[0] = 1;
    for (std::size_t v = 1; v < n; ++v) {
        best[v] = make_key(mst.points, 0, v);
    }
    mst.edges.reserve(n - 1);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v] && (pick == n || best[v] < best[pick])) {
                pick = v;
            }
        }
        done[pick] = 1;
        const Key& k = best[pick];
        mst.edges.push_back({k.a, k.b, distance(mst.points[k.a], mst.points[k.b])});
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v]) {
                const Key cand = make_key(mst.points, pick, v);
                if (cand < best[v]) {
                    best[v] = cand;
                }
            }
        }
    }
    std::sort(mst.edges.begin(), mst.edges.end(), [](const MstEdge& x, const MstEdge& y) {
        if (x.length != y.length) {
            return x.length > y.length;
        }
        return std::tie(x.i, x.j) < std::tie(y.i, y.j);
    });
    return mst;
}

ComponentSet split_components(const Mst& mst, double delta) {
    const std::size_t n = mst.points.size();
    DisjointSets sets(n);
    for (const MstEdge& e : mst.edges) {
        if (e.length <= delta) {
            sets.unite(e.i, e.j);
        }
    }
    ComponentSet out;
    out.threshold = delta;
    std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t r = sets.find(v);
        if (slot[r] == std::numeric_limits<std::size_t>::max()) {
            slot[r] = out.parts.size();
            out.parts.emplace_back();
        }
        out.parts[slot[r]].push_back(v);
    }
    return out;
}

std::vector<double> longest_edges(const Mst& mst, std::size_t m) {
    std::vector<double> out;
    const std::size_t count = std::min(m, mst.edges.size());
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(mst.edges[i].length);
    }
    return out;
}

double placement_bottleneck(const Mst& mst, std::span<const Point> extra) {
    const std::size_t n = mst.points.size();
    const std::size_t total = n + extra.size();
    auto at = [&](std::size_t v) { return v < n ? mst.points[v] : extra[v - n]; };
    std::vector<MstEdge> edges(mst.edges.begin(), mst.edges.end());
    for (std::size_t e = n; e < total; ++e) {
        for (std::size_t v = 0; v < e; ++v) {
            edges.push_back({v, e, distance(at(v), at(e))});
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const MstEdge& x, const MstEdge& y) { return x.length < y.length; });
    DisjointSets sets(total);
    std::size_t joined = 0;
    double bottleneck = 0.0;
    for (const MstEdge& e : edges) {
        if (joined + 1 == total) {
            break;
        }
        if (sets.unite(e.i, e.j)) {
            ++joined;
            bottleneck = e.length;
        }
    }
    return bottleneck;
}

}  // namespace segconn
