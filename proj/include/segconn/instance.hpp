#pragma once

#include <span>
#include <vector>

#include "segconn/geometry.hpp"

namespace segconn {

/// k uncertain points (one per segment) and n - k fixed points.
struct Instance {
    std::vector<ParamSegment> segments;
    std::vector<Point> points;

    std::size_t k() const { return segments.size(); }
    std::size_t n() const { return segments.size() + points.size(); }
};

/// Throws std::invalid_argument when there are no fixed points or any value
/// is non-finite.
void validate(const Instance& instance);

double max_segment_length(const Instance& instance);

/// Fixed points followed by the placement (one point per segment).
std::vector<Point> all_points(const Instance& instance, std::span<const Point> placement);

/// Lower endpoint of every segment.
std::vector<Point> arbitrary_placement(const Instance& instance);

}  // namespace segconn
