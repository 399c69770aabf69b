#include "segconn/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace segconn {

void validate(const Instance& instance) {
    if (instance.points.empty()) {
        throw std::invalid_argument("instance needs at least one fixed point");
    }
    for (const Point& p : instance.points) {
        if (!is_finite(p)) {
            throw std::invalid_argument("non-finite fixed point");
        }
    }
    for (const ParamSegment& s : instance.segments) {
        if (!is_finite(s.anchor) || !is_finite(s.dir) || !std::isfinite(s.lo) || !std::isfinite(s.hi) ||
            s.lo > s.hi) {
            throw std::invalid_argument("invalid segment");
        }
    }
}

double max_segment_length(const Instance& instance) {
    double out = 0.0;
    for (const ParamSegment& s : instance.segments) {
        out = std::max(out, s.length());
    }
    return out;
}

std::vector<Point> all_points(const Instance& instance, std::span<const Point> placement) {
    std::vector<Point> out(instance.points);
    out.insert(out.end(), placement.begin(), placement.end());
    return out;
}

std::vector<Point> arbitrary_placement(const Instance& instance) {
    std::vector<Point> out;
    out.reserve(instance.segments.size());
    for (const ParamSegment& s : instance.segments) {
        out.push_back(s.start());
    }
    return out;
}

}  // namespace segconn
