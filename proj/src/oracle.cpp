#include "segconn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "segconn/emst.hpp"

namespace segconn {

double mbst_bottleneck(std::span<const Point> points) {
    if (points.empty()) {
        throw std::invalid_argument("mbst_bottleneck needs at least one point");
    }
    const std::size_t n = points.size();
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.emplace_back(distance(points[i], points[j]), i, j);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    DisjointSets sets(n);
    std::size_t joined = 0;
    for (const auto& [d, i, j] : pairs) {
        if (joined + 1 >= n) {
            break;
        }
        if (sets.unite(i, j)) {
            ++joined;
            if (joined + 1 == n) {
                return d;
            }
        }
    }
    return 0.0;
}

namespace {

// Longest edge of a Prim MST; dense O(n^2).
double prim_bottleneck(const std::vector<Point>& pts, std::vector<double>& best, std::vector<char>& done) {
    const std::size_t n = pts.size();
    best.assign(n, std::numeric_limits<double>::infinity());
    done.assign(n, 0);
    best[0] = 0.0;
    double worst = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v] && (pick == n || best[v] < best[pick])) {
                pick = v;
            }
        }
        done[pick] = 1;
        worst = std::max(worst, best[pick]);
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v]) {
                best[v] = std::min(best[v], norm2(pts[v] - pts[pick]));
            }
        }
    }
    return std::sqrt(worst);
}

}  // namespace

OracleResult oracle_delta_star(const Instance& instance, int m) {
    validate(instance);
    if (m < 1) {
        throw std::invalid_argument("grid count must be at least 1");
    }
    const std::size_t k = instance.k();
    if (static_cast<double>(k) * std::log10(m + 1.0) > std::log10(kOracleGuard) + 1e-12) {
        throw std::invalid_argument("oracle grid too large: (m + 1)^k exceeds 1e7");
    }

    OracleResult out;
    out.error_bound = max_segment_length(instance) / m;
    std::vector<Point> pts(instance.points);
    pts.resize(instance.points.size() + k);
    const std::size_t base = instance.points.size();
    std::vector<int> idx(k, 0);
    auto place = [&](std::size_t s) {
        const ParamSegment& seg = instance.segments[s];
        const double t = idx[s] == m ? seg.hi : seg.lo + (seg.hi - seg.lo) * idx[s] / m;
        pts[base + s] = seg.at(t);
    };
    for (std::size_t s = 0; s < k; ++s) {
        place(s);
    }

    std::vector<double> best;
    std::vector<char> done;
    out.value = std::numeric_limits<double>::infinity();
    while (true) {
        const double v = prim_bottleneck(pts, best, done);
        if (v < out.value) {
            out.value = v;
            out.best_placement.assign(pts.begin() + base, pts.end());
        }
        // Odometer over the grid indices.
        std::size_t s = 0;
        while (s < k && idx[s] == m) {
            idx[s] = 0;
            place(s);
            ++s;
        }
        if (s == k) {
            break;
        }
        ++idx[s];
        place(s);
    }
    return out;
}

}  // namespace segconn
