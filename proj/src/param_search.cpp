#include "segconn/param_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace segconn {

namespace {

// Last point of the bracket [a, b] on the side where fn has the sign of fb.
template <class Fn>
double bisect_bracket(const Fn& fn, double a, double fa, double b) {
    for (int it = 0; it < 200; ++it) {
        if (b - a <= 1e-13 * std::max({1e-300, std::abs(a), std::abs(b)})) {
            break;
        }
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) {
            break;
        }
        const double fm = fn(m);
        if (fm == 0.0) {
            return m;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return b;
}

// Root of a monotone function strictly inside (lo, hi), if it changes sign.
template <class Fn>
void monotone_root(const Fn& fn, DeltaInterval iv, std::vector<double>& out) {
    const double flo = fn(iv.lo);
    const double fhi = fn(iv.hi);
    if (flo == 0.0 || fhi == 0.0 || (flo > 0.0) == (fhi > 0.0)) {
        return;
    }
    out.push_back(bisect_bracket(fn, iv.lo, flo, iv.hi));
}

bool inside(double v, DeltaInterval iv) { return v > iv.lo && v < iv.hi; }

// Endpoint functions of one interval of a delta-dependent segmentation.
struct Track {
    SqrtFunc lo;
    SqrtFunc hi;
};
using TrackSet = std::vector<Track>;

struct Value {
    double lo;
    double hi;
};

Value value_at(const Track& t, double delta) { return {t.lo.eval_clamped(delta), t.hi.eval_clamped(delta)}; }

bool overlapping(Value a, Value b) {
    const double scale = std::max({1.0, std::abs(a.lo), std::abs(a.hi), std::abs(b.lo), std::abs(b.hi)});
    return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi) + 1e-9 * scale;
}

class Parametric {
public:
    Parametric(const Preprocessing& prep, const ParametricOptions& options, SolveDiagnostics& diag)
        : prep_(prep), options_(options), diag_(diag) {}

    bool decide_at(double delta) {
        ++diag_.decide_calls;
        return decide(prep_, delta);
    }

    Decider decider() {
        return [this](double d) { return decide_at(d); };
    }

    DeltaInterval& interval() { return iv_; }

    void refine(std::vector<double> values) {
        if (std::none_of(values.begin(), values.end(), [&](double v) { return inside(v, iv_); })) {
            return;
        }
        ++diag_.refines;
        iv_ = refine_among(std::move(values), iv_, decider());
        diag_.trace.push_back(iv_);
    }

    void refine(std::vector<double> values, EventKind kind) {
        diag_.events[static_cast<std::size_t>(kind)] +=
            std::count_if(values.begin(), values.end(), [&](double v) { return inside(v, iv_); });
        refine(std::move(values));
    }

    // Walks every topology tree; false if the anomaly budget ran out.
    bool run_trees(int samples) {
        samples_ = samples;
        const std::size_t k = prep_.k();
        const auto& top = prep_.top_edges;
        const std::size_t fam = std::partition_point(top.begin(), top.end(),
                                                     [&](double len) { return len > iv_.lo; }) -
                                top.begin();
        if (k == 0 || fam >= 4 * k + 1) {
            return true;
        }
        family_ = &prep_.families[fam];
        const std::size_t ell = family_->size();

        // Edges that cannot be used anywhere in (lo, hi].
        const double r_hi = slack_radius(iv_.hi);
        std::vector<char> sc(k * ell, 0);
        std::vector<char> ss(k * k, 0);
        for (std::size_t s = 0; s < k; ++s) {
            const ParamSegment& seg = prep_.instance.segments[s];
            for (std::size_t c = 0; c < ell; ++c) {
                sc[s * ell + c] =
                    !intersect_union_disks_segment(prep_.voronoi[(*family_)[c]][s], r_hi, seg).empty();
            }
            for (std::size_t t = 0; t < k; ++t) {
                const ParamSegment& other = prep_.instance.segments[t];
                ss[s * k + t] = segment_segment_distance(seg.start(), seg.end(), other.start(), other.end()) <= r_hi;
            }
        }
        auto allowed = [&](int u, int v) {
            return v < static_cast<int>(k) ? ss[u * k + v] != 0 : sc[u * ell + (v - k)] != 0;
        };

        bool aborted = false;
        for_each_topology_tree(
            static_cast<int>(k), static_cast<int>(ell),
            [&](const TopologyTree& tree) {
                while (tree_realizable(tree)) {
                    if (++diag_.anomalies > options_.max_anomalies) {
                        aborted = true;
                        return false;
                    }
                    refine({probe()});
                }
                return true;
            },
            allowed);
        return !aborted;
    }

private:
    double probe() const { return 0.5 * (iv_.lo + iv_.hi); }

    // Bottom-up DP with delta-dependent endpoints; true when every root set
    // is non-empty at the probe.
    bool tree_realizable(const TopologyTree& tree) {
        const std::size_t k = prep_.k();
        for (const SignificantSubtree& sub : decompose_significant(tree)) {
            std::vector<TrackSet> x(k);
            for (int s : sub.segment_nodes) {
                const ParamSegment& seg = prep_.instance.segments[s];
                TrackSet cur{{SqrtFunc::constant(seg.lo), SqrtFunc::constant(seg.hi)}};
                for (int c : sub.segment_children[s]) {
                    TrackSet y = neighborhood_tracks(x[c], prep_.instance.segments[c], seg);
                    if (y.empty()) {
                        return false;
                    }
                    cur = intersect_tracks(cur, y);
                    if (cur.empty()) {
                        return false;
                    }
                }
                for (int c : sub.component_children[s]) {
                    TrackSet z = disk_tracks(prep_.voronoi[(*family_)[c - k]][s], seg);
                    if (z.empty()) {
                        return false;
                    }
                    cur = intersect_tracks(cur, z);
                    if (cur.empty()) {
                        return false;
                    }
                }
                x[s] = std::move(cur);
            }
        }
        return true;
    }

    // (union of disks around one component) on `seg`.
    TrackSet disk_tracks(const VoronoiOnSegment& vor, const ParamSegment& seg) {
        std::vector<double> events;
        for (std::size_t i = 0; i < vor.cells.size(); ++i) {
            const VoronoiCell& cell = vor.cells[i];
            const ParamSegment cs = vor.cell_segment(i);
            events.push_back(point_segment_distance(cell.site_point, cs.start(), cs.end()));
            events.push_back(distance(cell.site_point, seg.at(cell.lo)));
            events.push_back(distance(cell.site_point, seg.at(cell.hi)));
        }
        refine(std::move(events), EventKind::VoronoiCellChange);

        const double p = probe();
        TrackSet out;
        bool prev_hi_const = false;
        std::size_t prev_cell = 0;
        for (std::size_t i = 0; i < vor.cells.size(); ++i) {
            const VoronoiCell& cell = vor.cells[i];
            const ParamSegment cs = vor.cell_segment(i);
            if (point_segment_distance(cell.site_point, cs.start(), cs.end()) > p) {
                prev_hi_const = false;
                continue;
            }
            const Point q = seg.anchor - cell.site_point;
            const bool lo_const = distance(cell.site_point, seg.at(cell.lo)) <= p;
            const bool hi_const = distance(cell.site_point, seg.at(cell.hi)) <= p;
            SqrtFunc lo = lo_const ? SqrtFunc::constant(cell.lo)
                                   : circle_track(q, seg.dir, seg.dir, SqrtFunc::constant(0.0), -1);
            SqrtFunc hi = hi_const ? SqrtFunc::constant(cell.hi)
                                   : circle_track(q, seg.dir, seg.dir, SqrtFunc::constant(0.0), 1);
            if (!out.empty() && prev_hi_const && lo_const && prev_cell + 1 == i &&
                vor.cells[prev_cell].hi == cell.lo) {
                out.back().hi = hi;
            } else {
                out.push_back({lo, hi});
            }
            prev_hi_const = hi_const;
            prev_cell = i;
        }
        return out;
    }

    // (child set + D(0, delta)) on `seg`, the child set living on `child`.
    TrackSet neighborhood_tracks(const TrackSet& xs, const ParamSegment& child, const ParamSegment& seg) {
        const Line support = child.line();
        const Point n = perp(child.dir);
        const double denom = dot(seg.dir, n);
        const bool crossing = std::abs(denom) > tol::kDisc;
        const double off = dot(seg.anchor - child.anchor, n);
        const double along = dot(seg.anchor - child.anchor, child.dir);
        const double slope_u = dot(seg.dir, child.dir);

        std::vector<double> empty_events;
        std::vector<double> cross_events;
        for (const Track& tr : xs) {
            auto piece_ends = [&](double d, Point& a, Point& b) {
                a = support.at(tr.lo.eval_clamped(d));
                b = support.at(tr.hi.eval_clamped(d));
            };
            monotone_root(
                [&](double d) {
                    Point a, b;
                    piece_ends(d, a, b);
                    return segment_segment_distance(a, b, seg.start(), seg.end()) - d;
                },
                iv_, empty_events);
            for (const Point end : {seg.start(), seg.end()}) {
                monotone_root(
                    [&](double d) {
                        Point a, b;
                        piece_ends(d, a, b);
                        return point_segment_distance(end, a, b) - d;
                    },
                    iv_, cross_events);
            }
            if (crossing) {
                for (double sg : {1.0, -1.0}) {
                    const SqrtFunc u = SqrtFunc::linear(sg * slope_u / denom, along - off * slope_u / denom);
                    for (const SqrtFunc* end : {&tr.lo, &tr.hi}) {
                        const auto roots = root_between(u, *end, iv_, samples_);
                        cross_events.insert(cross_events.end(), roots.begin(), roots.end());
                    }
                }
            }
        }
        refine(std::move(empty_events), EventKind::NeighborhoodEmptiness);
        refine(std::move(cross_events), EventKind::EndpointCrossing);

        const double p = probe();
        const Point q = seg.anchor - child.anchor;
        auto track_for = [&](PieceSource src, const Track& tr, int branch) {
            switch (src) {
                case PieceSource::SegmentLo:
                    return SqrtFunc::constant(seg.lo);
                case PieceSource::SegmentHi:
                    return SqrtFunc::constant(seg.hi);
                case PieceSource::CapLo:
                    return circle_track(q, seg.dir, child.dir, tr.lo, branch);
                case PieceSource::CapHi:
                    return circle_track(q, seg.dir, child.dir, tr.hi, branch);
                case PieceSource::SidePlus:
                    return SqrtFunc::linear(1.0 / denom, -off / denom);
                case PieceSource::SideMinus:
                    return SqrtFunc::linear(-1.0 / denom, -off / denom);
            }
            throw std::logic_error("unknown piece source");
        };
        TrackSet pieces;
        for (const Track& tr : xs) {
            const Value v = value_at(tr, p);
            const NeighborhoodPiece np = neighborhood_piece(support, v.lo, std::max(v.lo, v.hi), p, seg);
            if (!np.empty) {
                pieces.push_back({track_for(np.lo_source, tr, -1), track_for(np.hi_source, tr, 1)});
            }
        }
        if (pieces.size() < 2) {
            return pieces;
        }

        // Crossings among pieces that still meet at hi.
        std::vector<double> merge_events;
        std::vector<Value> at_hi;
        for (const Track& t : pieces) {
            at_hi.push_back(value_at(t, iv_.hi));
        }
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            for (std::size_t j = i + 1; j < pieces.size(); ++j) {
                if (overlapping(at_hi[i], at_hi[j])) {
                    add_crossings(pieces[i], pieces[j], merge_events);
                }
            }
        }
        refine(std::move(merge_events), EventKind::EndpointCrossing);

        const double pm = probe();
        std::vector<Value> vals;
        for (const Track& t : pieces) {
            vals.push_back(value_at(t, pm));
        }
        std::vector<std::size_t> order(pieces.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a].lo < vals[b].lo; });
        TrackSet out;
        double cur_hi = 0.0;
        for (std::size_t idx : order) {
            if (!out.empty() && vals[idx].lo <= cur_hi + tol::kGap) {
                if (vals[idx].hi > cur_hi) {
                    cur_hi = vals[idx].hi;
                    out.back().hi = pieces[idx].hi;
                }
                continue;
            }
            out.push_back(pieces[idx]);
            cur_hi = vals[idx].hi;
        }
        return out;
    }

    void add_crossings(const Track& a, const Track& b, std::vector<double>& out) const {
        const std::pair<const SqrtFunc*, const SqrtFunc*> eqs[] = {
            {&a.lo, &b.lo}, {&a.hi, &b.hi}, {&a.lo, &b.hi}, {&a.hi, &b.lo}};
        for (const auto& [f, g] : eqs) {
            if (f->is_constant() && g->is_constant()) {
                continue;
            }
            const auto roots = root_between(*f, *g, iv_, samples_);
            out.insert(out.end(), roots.begin(), roots.end());
        }
    }

    TrackSet intersect_tracks(const TrackSet& a, const TrackSet& b) {
        std::vector<double> events;
        std::vector<Value> va;
        std::vector<Value> vb;
        for (const Track& t : a) {
            va.push_back(value_at(t, iv_.hi));
        }
        for (const Track& t : b) {
            vb.push_back(value_at(t, iv_.hi));
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (overlapping(va[i], vb[j])) {
                    add_crossings(a[i], b[j], events);
                }
            }
        }
        refine(std::move(events), EventKind::MergeCrossing);

        const double p = probe();
        va.clear();
        vb.clear();
        for (const Track& t : a) {
            va.push_back(value_at(t, p));
        }
        for (const Track& t : b) {
            vb.push_back(value_at(t, p));
        }
        TrackSet out;
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() && j < b.size()) {
            const bool a_lo = va[i].lo >= vb[j].lo;
            const bool a_hi = va[i].hi <= vb[j].hi;
            const double lo = a_lo ? va[i].lo : vb[j].lo;
            const double hi = a_hi ? va[i].hi : vb[j].hi;
            if (lo <= hi) {
                out.push_back({a_lo ? a[i].lo : b[j].lo, a_hi ? a[i].hi : b[j].hi});
            }
            if (a_hi) {
                ++i;
            } else {
                ++j;
            }
        }
        return out;
    }

    const Preprocessing& prep_;
    const ParametricOptions& options_;
    SolveDiagnostics& diag_;
    DeltaInterval iv_;
    const std::vector<std::size_t>* family_ = nullptr;
    int samples_ = 256;
};

std::vector<double> candidate_distances(const Preprocessing& prep, double lo, double hi) {
    std::vector<double> out;
    auto take = [&](double v) {
        if (v > lo && v <= hi) {
            out.push_back(v);
        }
    };
    for (const MstEdge& e : prep.mst.edges) {
        take(e.length);
    }
    const auto& segs = prep.instance.segments;
    for (const ParamSegment& s : segs) {
        for (const Point& p : prep.instance.points) {
            take(point_segment_distance(p, s.start(), s.end()));
            take(distance(p, s.start()));
            take(distance(p, s.end()));
        }
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const ParamSegment& s = segs[i];
            const ParamSegment& t = segs[j];
            take(segment_segment_distance(s.start(), s.end(), t.start(), t.end()));
            for (const Point a : {s.start(), s.end()}) {
                for (const Point b : {t.start(), t.end()}) {
                    take(distance(a, b));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void attach_witness(const Preprocessing& prep, SolveResult& r) {
    Decision d = decide_full(prep, r.delta_star, true);
    r.witness = std::move(d.witness);
    r.tree = std::move(d.tree);
}

// Starting interval (0, bottleneck of an arbitrary placement]; nullopt when
// delta = 0 already works.
std::optional<DeltaInterval> initial_interval(const Preprocessing& prep, const Decider& dec) {
    if (decide_zero(prep.instance)) {
        return std::nullopt;
    }
    double hi = placement_bottleneck(prep.mst, arbitrary_placement(prep.instance));
    hi = std::max(hi, 1e-300);
    for (int guard = 0; guard < 64 && !dec(hi); ++guard) {
        hi *= 2.0;
    }
    return DeltaInterval{0.0, hi};
}

DeltaInterval bisect(DeltaInterval iv, double tol, const Decider& dec) {
    while (iv.hi - iv.lo > tol * iv.hi + tol) {
        const double mid = 0.5 * (iv.lo + iv.hi);
        if (mid <= iv.lo || mid >= iv.hi) {
            break;
        }
        if (dec(mid)) {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    return iv;
}

}  // namespace

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::NeighborhoodEmptiness:
            return "neighborhood_emptiness";
        case EventKind::EndpointCrossing:
            return "endpoint_crossing";
        case EventKind::VoronoiCellChange:
            return "voronoi_cell_change";
        case EventKind::MergeCrossing:
            return "merge_crossing";
    }
    return "unknown";
}

std::vector<double> root_between(const SqrtFunc& f, const SqrtFunc& g, DeltaInterval iv, int samples) {
    std::vector<double> out;
    if (!(iv.hi > iv.lo) || samples < 1) {
        return out;
    }
    std::vector<double> xs(samples + 1);
    std::vector<double> d(samples + 1);
    bool identical = true;
    for (int i = 0; i <= samples; ++i) {
        xs[i] = i == samples ? iv.hi : iv.lo + (iv.hi - iv.lo) * i / samples;
        const double fv = f.eval_clamped(xs[i]);
        const double gv = g.eval_clamped(xs[i]);
        d[i] = fv - gv;
        if (std::abs(d[i]) > 1e-12 * std::max({1.0, std::abs(fv), std::abs(gv)})) {
            identical = false;
        }
    }
    if (identical) {
        return out;
    }
    auto diff = [&](double x) { return f.eval_clamped(x) - g.eval_clamped(x); };
    for (int i = 0; i < samples; ++i) {
        if (d[i] == 0.0) {
            if (i > 0) {
                out.push_back(xs[i]);
            }
            continue;
        }
        if (d[i + 1] != 0.0 && (d[i] > 0.0) != (d[i + 1] > 0.0)) {
            const double r = bisect_bracket(diff, xs[i], d[i], xs[i + 1]);
            if (r > iv.lo && r < iv.hi) {
                out.push_back(r);
            }
        }
    }
    return out;
}

DeltaInterval refine_among(std::vector<double> values, DeltaInterval iv, const Decider& decider) {
    values.erase(std::remove_if(values.begin(), values.end(),
                                [&](double v) { return !(v > iv.lo && v < iv.hi); }),
                 values.end());
    if (values.empty()) {
        return iv;
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    // Invariant: decider false at values[l] (or iv.lo), true at values[r] (or iv.hi).
    std::ptrdiff_t l = -1;
    std::ptrdiff_t r = static_cast<std::ptrdiff_t>(values.size());
    while (r - l > 1) {
        const std::ptrdiff_t mid = l + (r - l) / 2;
        if (decider(values[mid])) {
            r = mid;
        } else {
            l = mid;
        }
    }
    if (l >= 0) {
        iv.lo = values[l];
    }
    if (r < static_cast<std::ptrdiff_t>(values.size())) {
        iv.hi = values[r];
    }
    return iv;
}

double snap_result(const Preprocessing& prep, DeltaInterval iv, const Decider& decider) {
    const double from = std::max(iv.lo, iv.hi * (1.0 - 1e-9));
    for (double c : candidate_distances(prep, from, iv.hi)) {
        if (c == iv.hi || decider(c)) {
            return c;
        }
    }
    return iv.hi;
}

SolveResult solve_bisect(const Preprocessing& prep, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    SolveResult r;
    Decider dec = [&](double d) {
        ++r.diagnostics.decide_calls;
        return decide(prep, d);
    };
    const auto start = initial_interval(prep, dec);
    if (!start) {
        attach_witness(prep, r);
        return r;
    }
    const DeltaInterval iv = bisect(*start, tol, dec);
    r.delta_star = snap_result(prep, iv, dec);
    attach_witness(prep, r);
    return r;
}

SolveResult solve_parametric(const Preprocessing& prep, const ParametricOptions& options) {
    SolveResult r;
    Parametric search(prep, options, r.diagnostics);
    const Decider dec = search.decider();
    const auto start = initial_interval(prep, dec);
    if (!start) {
        attach_witness(prep, r);
        return r;
    }
    DeltaInterval& iv = search.interval();
    iv = *start;
    search.refine(prep.top_edges);

    bool done = false;
    for (int samples = options.samples; samples <= options.max_samples; samples *= 2) {
        r.diagnostics.samples = samples;
        if (!search.run_trees(samples)) {
            break;
        }
        iv.hi = snap_result(prep, iv, dec);
        const double below = iv.hi - std::max(1e-10 * iv.hi, 1e-10);
        if (below <= iv.lo || !dec(below)) {
            done = true;
            break;
        }
        iv.hi = below;
    }
    if (!done) {
        r.diagnostics.fallback = true;
        iv = bisect(iv, 1e-12, dec);
        iv.hi = snap_result(prep, iv, dec);
    }
    r.delta_star = iv.hi;
    attach_witness(prep, r);
    return r;
}

}  // namespace segconn
