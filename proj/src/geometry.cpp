#include "segconn/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace segconn {

bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double point_segment_distance(Point q, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) {
        return distance(q, a);
    }
    const double s = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
    return distance(q, a + s * ab);
}

double segment_segment_distance(Point a1, Point b1, Point a2, Point b2) {
    const Point d1 = b1 - a1;
    const Point d2 = b2 - a2;
    const double denom = cross(d1, d2);
    if (denom != 0.0) {
        const Point w = a2 - a1;
        const double s = cross(w, d2) / denom;
        const double t = cross(w, d1) / denom;
        if (s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0) {
            return 0.0;
        }
    }
    return std::min({point_segment_distance(a1, a2, b2), point_segment_distance(b1, a2, b2),
                     point_segment_distance(a2, a1, b1), point_segment_distance(b2, a1, b1)});
}

ParamSegment ParamSegment::make(Point anchor, Point dir, double lo, double hi) {
    if (!is_finite(anchor) || !is_finite(dir) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("segment has non-finite values");
    }
    if (lo > hi) {
        throw std::invalid_argument("segment requires lo <= hi");
    }
    const double len = norm(dir);
    if (len == 0.0) {
        throw std::invalid_argument("segment direction is zero");
    }
    // Leave already-unit directions bit-identical so serialization round-trips.
    if (std::abs(len - 1.0) > 4 * std::numeric_limits<double>::epsilon()) {
        dir = (1.0 / len) * dir;
    }
    return {anchor, dir, lo, hi};
}

ParamSegment ParamSegment::from_endpoints(Point a, Point b) {
    const double len = distance(a, b);
    if (len == 0.0) {
        return make(a, {1.0, 0.0}, 0.0, 0.0);
    }
    return make(a, (1.0 / len) * (b - a), 0.0, len);
}

bool Segmentation::contains(double t, double slack) const {
    auto it = std::lower_bound(intervals.begin(), intervals.end(), t - slack,
                               [](const Interval& iv, double v) { return iv.hi < v; });
    return it != intervals.end() && it->lo - slack <= t;
}

void append_fused(std::vector<Interval>& out, Interval iv) {
    if (!out.empty() && iv.lo - out.back().hi <= tol::kGap) {
        out.back().hi = std::max(out.back().hi, iv.hi);
        out.back().lo = std::min(out.back().lo, iv.lo);
        return;
    }
    out.push_back(iv);
}

LineIntersection intersect_lines(const Line& l1, const Line& l2) {
    const double d = cross(l1.dir, l2.dir);
    const Point w = l2.anchor - l1.anchor;
    if (std::abs(d) <= tol::kDisc) {
        if (std::abs(cross(l1.dir, w)) <= tol::kCoord) {
            return {LineIntersection::Kind::Coincident, 0.0, 0.0};
        }
        return {};
    }
    return {LineIntersection::Kind::Point, cross(w, l2.dir) / d, cross(w, l1.dir) / d};
}

LineRoots intersect_circle_line(Point center, double radius, const Line& line) {
    const Point w = center - line.anchor;
    const double t0 = dot(w, line.dir);
    const double h = std::abs(cross(line.dir, w));
    // Quarter of the quadratic's discriminant, in factored form.
    const double disc = (radius - h) * (radius + h);
    const double scale = std::max(1.0, radius * radius);
    LineRoots roots;
    if (disc < -tol::kDisc * scale) {
        return roots;
    }
    if (std::abs(disc) <= tol::kDisc * scale) {
        roots.t[0] = t0;
        roots.count = 1;
        return roots;
    }
    const double r = std::sqrt(disc);
    roots.t = {t0 - r, t0 + r};
    roots.count = 2;
    return roots;
}

std::optional<ParamSegment> intersect_disk_segment(Point center, double radius,
                                                   const ParamSegment& seg) {
    const LineRoots roots = intersect_circle_line(center, radius, seg.line());
    if (roots.count == 0) {
        return std::nullopt;
    }
    const double lo = std::max(seg.lo, roots.t[0]);
    const double hi = std::min(seg.hi, roots.t[roots.count - 1]);
    if (lo > hi) {
        return std::nullopt;
    }
    return seg.with_range(lo, hi);
}

namespace {

bool same_line(Point a1, Point d1, Point a2, Point d2) {
    return distance(a1, a2) <= tol::kCoord && distance(d1, d2) <= tol::kDisc;
}

}  // namespace

Segmentation intersect_segmentations(const Segmentation& a, const Segmentation& b) {
    if (!same_line(a.anchor, a.dir, b.anchor, b.dir)) {
        throw std::invalid_argument("segmentations live on different parametrized lines");
    }
    Segmentation out{a.anchor, a.dir, {}};
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.intervals.size() && j < b.intervals.size()) {
        const Interval& x = a.intervals[i];
        const Interval& y = b.intervals[j];
        const double lo = std::max(x.lo, y.lo);
        const double hi = std::min(x.hi, y.hi);
        if (lo <= hi) {
            append_fused(out.intervals, {lo, hi});
        }
        if (x.hi < y.hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

namespace {

// Sign of |p - qa|^2 - |p - qb|^2 along the host line: positive means qb is
// closer. Linear in t.
struct Bisector {
    double c0;
    double c1;

    double operator()(double t) const { return c0 + c1 * t; }
};

Bisector bisector(const ParamSegment& host, Point qa, Point qb) {
    const Point wa = host.anchor - qa;
    const Point wb = host.anchor - qb;
    return {norm2(wa) - norm2(wb), 2.0 * dot(host.dir, qb - qa)};
}

std::size_t closer(const Bisector& f, double t, const VoronoiCell& a, const VoronoiCell& b) {
    const double v = f(t);
    if (v > 0.0) {
        return 1;
    }
    if (v < 0.0) {
        return 0;
    }
    return a.site <= b.site ? 0 : 1;
}

void push_cell(std::vector<VoronoiCell>& out, const VoronoiCell& c) {
    if (!out.empty() && out.back().site == c.site) {
        out.back().hi = c.hi;
        return;
    }
    out.push_back(c);
}

std::vector<VoronoiCell> merge_diagrams(const ParamSegment& host, const std::vector<VoronoiCell>& left,
                                        const std::vector<VoronoiCell>& right) {
    std::vector<VoronoiCell> out;
    out.reserve(left.size() + right.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double cur = host.lo;
    while (i < left.size() && j < right.size()) {
        const VoronoiCell& a = left[i];
        const VoronoiCell& b = right[j];
        const double next = std::min(a.hi, b.hi);
        if (next > cur) {
            const Bisector f = bisector(host, a.site_point, b.site_point);
            const VoronoiCell* pick[2] = {&a, &b};
            double split = std::numeric_limits<double>::quiet_NaN();
            if (f.c1 != 0.0) {
                split = -f.c0 / f.c1;
            }
            if (split > cur && split < next) {
                VoronoiCell first = *pick[closer(f, 0.5 * (cur + split), a, b)];
                VoronoiCell second = *pick[closer(f, 0.5 * (split + next), a, b)];
                first.lo = cur;
                first.hi = split;
                second.lo = split;
                second.hi = next;
                push_cell(out, first);
                push_cell(out, second);
            } else {
                VoronoiCell c = *pick[closer(f, 0.5 * (cur + next), a, b)];
                c.lo = cur;
                c.hi = next;
                push_cell(out, c);
            }
            cur = next;
        }
        if (a.hi <= b.hi) {
            ++i;
        }
        if (b.hi <= a.hi) {
            ++j;
        }
    }
    return out;
}

std::vector<VoronoiCell> voronoi_range(std::span<const Point> sites, std::size_t begin,
                                       std::size_t end, const ParamSegment& host) {
    if (end - begin == 1) {
        return {VoronoiCell{begin, sites[begin], host.lo, host.hi}};
    }
    const std::size_t mid = begin + (end - begin) / 2;
    return merge_diagrams(host, voronoi_range(sites, begin, mid, host),
                          voronoi_range(sites, mid, end, host));
}

}  // namespace

VoronoiOnSegment voronoi_on_segment(std::span<const Point> sites, const ParamSegment& seg) {
    if (sites.empty()) {
        throw std::invalid_argument("voronoi_on_segment needs at least one site");
    }
    VoronoiOnSegment vor{seg, {}};
    if (seg.degenerate()) {
        const Point p = seg.start();
        std::size_t best = 0;
        for (std::size_t i = 1; i < sites.size(); ++i) {
            if (norm2(sites[i] - p) < norm2(sites[best] - p)) {
                best = i;
            }
        }
        vor.cells.push_back({best, sites[best], seg.lo, seg.hi});
        return vor;
    }
    vor.cells = voronoi_range(sites, 0, sites.size(), seg);
    return vor;
}

Segmentation intersect_union_disks_segment(const VoronoiOnSegment& vor, double radius,
                                           const ParamSegment& seg) {
    Segmentation out = Segmentation::empty_on(seg);
    for (std::size_t i = 0; i < vor.cells.size(); ++i) {
        const auto piece = intersect_disk_segment(vor.cells[i].site_point, radius, vor.cell_segment(i));
        if (piece) {
            append_fused(out.intervals, {piece->lo, piece->hi});
        }
    }
    return out;
}

NeighborhoodPiece neighborhood_piece(const Line& support, double a, double b, double delta,
                                     const ParamSegment& seg) {
    if (a > b) {
        std::swap(a, b);
    }
    const Point pa = support.at(a);
    const Point pb = support.at(b);
    const double utol = tol::kCoord * std::max({1.0, std::abs(a), std::abs(b), delta});
    const double ttol = tol::kCoord * std::max({1.0, std::abs(seg.lo), std::abs(seg.hi)});
    auto u_of = [&](double t) { return dot(seg.at(t) - support.anchor, support.dir); };

    struct Candidate {
        double t;
        PieceSource source;
    };
    std::array<Candidate, 8> cand{};
    int count = 0;

    auto inside = [&](double t) { return point_segment_distance(seg.at(t), pa, pb) <= delta + tol::kCoord; };
    if (inside(seg.lo)) {
        cand[count++] = {seg.lo, PieceSource::SegmentLo};
    }
    if (inside(seg.hi)) {
        cand[count++] = {seg.hi, PieceSource::SegmentHi};
    }
    for (double t : intersect_circle_line(pa, delta, seg.line())) {
        if (u_of(t) <= a + utol) {
            cand[count++] = {t, PieceSource::CapLo};
        }
    }
    for (double t : intersect_circle_line(pb, delta, seg.line())) {
        if (u_of(t) >= b - utol) {
            cand[count++] = {t, PieceSource::CapHi};
        }
    }
    const Point n = perp(support.dir);
    const double denom = dot(seg.dir, n);
    if (std::abs(denom) > tol::kDisc) {
        const double off = dot(seg.anchor - support.anchor, n);
        for (double side : {1.0, -1.0}) {
            const double t = (side * delta - off) / denom;
            const double u = u_of(t);
            if (u >= a - utol && u <= b + utol) {
                cand[count++] = {t, side > 0 ? PieceSource::SidePlus : PieceSource::SideMinus};
            }
        }
    }

    NeighborhoodPiece piece;
    for (int i = 0; i < count; ++i) {
        double t = cand[i].t;
        if (t < seg.lo - ttol || t > seg.hi + ttol) {
            continue;
        }
        t = std::clamp(t, seg.lo, seg.hi);
        if (piece.empty) {
            piece = {false, t, t, cand[i].source, cand[i].source};
            continue;
        }
        if (t < piece.lo) {
            piece.lo = t;
            piece.lo_source = cand[i].source;
        }
        if (t > piece.hi) {
            piece.hi = t;
            piece.hi_source = cand[i].source;
        }
    }
    return piece;
}

std::vector<Interval> merge_ordered_pieces(std::vector<Interval> pieces) {
    std::vector<Interval> list;
    list.reserve(pieces.size());
    for (const Interval& p : pieces) {
        if (!list.empty() && p.lo <= list.back().hi + tol::kGap && list.back().lo <= p.hi + tol::kGap) {
            list.back().lo = std::min(list.back().lo, p.lo);
            list.back().hi = std::max(list.back().hi, p.hi);
        } else {
            list.push_back(p);
        }
    }
    auto ascending = [](const std::vector<Interval>& v) {
        return std::is_sorted(v.begin(), v.end(),
                              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    };
    if (!ascending(list)) {
        std::reverse(list.begin(), list.end());
        if (!ascending(list)) {
            std::sort(list.begin(), list.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
        }
    }
    std::vector<Interval> out;
    out.reserve(list.size());
    for (const Interval& iv : list) {
        append_fused(out, iv);
    }
    return out;
}

Segmentation intersect_neighborhood_segmentation_segment(const Segmentation& x, double delta,
                                                         const ParamSegment& seg) {
    const Line support{x.anchor, x.dir};
    std::vector<Interval> pieces;
    pieces.reserve(x.intervals.size());
    for (const Interval& piece : x.intervals) {
        const NeighborhoodPiece p = neighborhood_piece(support, piece.lo, piece.hi, delta, seg);
        if (!p.empty) {
            pieces.push_back({p.lo, p.hi});
        }
    }
    return {seg.anchor, seg.dir, merge_ordered_pieces(std::move(pieces))};
}

}  // namespace segconn
