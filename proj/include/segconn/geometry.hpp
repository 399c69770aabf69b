#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace segconn {

namespace tol {
// Parallelism and scaled-discriminant threshold.
inline constexpr double kDisc = 1e-12;
// Coordinate-level comparisons (point coincidence, endpoint containment).
inline constexpr double kCoord = 1e-9;
// Intervals of a segmentation separated by at most this gap are fused.
inline constexpr double kGap = 1e-12;
}  // namespace tol

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point perp(Point a) { return {-a.y, a.x}; }

bool is_finite(Point p);

/// Distance from `q` to the closed segment `[a, b]` (a == b allowed).
double point_segment_distance(Point q, Point a, Point b);

/// Distance between closed segments `[a1, b1]` and `[a2, b2]`.
double segment_segment_distance(Point a1, Point b1, Point a2, Point b2);

struct Line {
    Point anchor;
    Point dir;  // unit

    Point at(double t) const { return anchor + t * dir; }
};

/// A segment `anchor + t * dir`, `t in [lo, hi]`. `lo == hi` is a point.
struct ParamSegment {
    Point anchor;
    Point dir{1.0, 0.0};
    double lo = 0.0;
    double hi = 0.0;

    /// Validates and normalizes `dir`. Throws std::invalid_argument on a zero
    /// or non-finite direction, non-finite values, or `lo > hi`.
    static ParamSegment make(Point anchor, Point dir, double lo, double hi);
    /// Segment from `a` to `b` with anchor `a` and `t in [0, |b - a|]`.
    static ParamSegment from_endpoints(Point a, Point b);

    Point at(double t) const { return anchor + t * dir; }
    Point start() const { return at(lo); }
    Point end() const { return at(hi); }
    double length() const { return hi - lo; }
    bool degenerate() const { return lo == hi; }
    Line line() const { return {anchor, dir}; }
    ParamSegment with_range(double a, double b) const { return {anchor, dir, a, b}; }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Ordered, pairwise disjoint intervals on the line `anchor + t * dir`.
struct Segmentation {
    Point anchor;
    Point dir{1.0, 0.0};
    std::vector<Interval> intervals;

    static Segmentation empty_on(const ParamSegment& s) { return {s.anchor, s.dir, {}}; }
    static Segmentation whole(const ParamSegment& s) { return {s.anchor, s.dir, {{s.lo, s.hi}}}; }

    bool empty() const { return intervals.empty(); }
    std::size_t size() const { return intervals.size(); }
    bool contains(double t, double slack = 0.0) const;
    Point at(double t) const { return anchor + t * dir; }
};

/// Appends `iv` to an ordered interval list, fusing with the back when the
/// gap is at most tol::kGap.
void append_fused(std::vector<Interval>& out, Interval iv);

struct LineIntersection {
    enum class Kind { Empty, Point, Coincident };
    Kind kind = Kind::Empty;
    double t1 = 0.0;
    double t2 = 0.0;
};

LineIntersection intersect_lines(const Line& l1, const Line& l2);

/// Up to two line parameters, ascending.
struct LineRoots {
    std::array<double, 2> t{};
    int count = 0;

    const double* begin() const { return t.data(); }
    const double* end() const { return t.data() + count; }
};

LineRoots intersect_circle_line(Point center, double radius, const Line& line);

std::optional<ParamSegment> intersect_disk_segment(Point center, double radius,
                                                   const ParamSegment& seg);

/// Set intersection. Throws std::invalid_argument when the segmentations do
/// not share anchor and direction.
Segmentation intersect_segmentations(const Segmentation& a, const Segmentation& b);

struct VoronoiCell {
    std::size_t site = 0;  // index into the site list
    Point site_point;
    double lo = 0.0;
    double hi = 0.0;
};

/// Voronoi diagram of a point set restricted to a host segment: cells ordered
/// along the host, consecutive cells share one boundary parameter.
struct VoronoiOnSegment {
    ParamSegment host;
    std::vector<VoronoiCell> cells;

    ParamSegment cell_segment(std::size_t i) const {
        return host.with_range(cells[i].lo, cells[i].hi);
    }
};

/// Divide and conquer over the sites. Throws std::invalid_argument on an
/// empty site list.
VoronoiOnSegment voronoi_on_segment(std::span<const Point> sites, const ParamSegment& seg);

/// (union of D(site, radius)) intersected with `seg`, one disk per cell.
Segmentation intersect_union_disks_segment(const VoronoiOnSegment& vor, double radius,
                                           const ParamSegment& seg);

/// Which boundary piece produced an endpoint of a neighborhood piece.
enum class PieceSource { SegmentLo, SegmentHi, CapLo, CapHi, SidePlus, SideMinus };

/// `(piece + D(0, delta)) ∩ seg` for `piece = support.at([a, b])`.
struct NeighborhoodPiece {
    bool empty = true;
    double lo = 0.0;
    double hi = 0.0;
    PieceSource lo_source = PieceSource::SegmentLo;
    PieceSource hi_source = PieceSource::SegmentHi;
};

NeighborhoodPiece neighborhood_piece(const Line& support, double a, double b, double delta,
                                     const ParamSegment& seg);

/// `(X + D(0, delta)) ∩ seg`, reported on the line of `seg`.
Segmentation intersect_neighborhood_segmentation_segment(const Segmentation& x, double delta,
                                                         const ParamSegment& seg);

/// Merges pieces listed in the order of their source intervals: adjacent
/// overlapping pieces are joined in one pass, then the result is put in
/// ascending order.
std::vector<Interval> merge_ordered_pieces(std::vector<Interval> pieces);

}  // namespace segconn
