#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "segconn/geometry.hpp"
#include "segconn/instance.hpp"

namespace segconn {

/// Smallest delta for which the threshold graph on `points` is connected,
/// from sorted pairwise distances and union-find.
double mbst_bottleneck(std::span<const Point> points);

struct OracleResult {
    double value = 0.0;
    double error_bound = 0.0;
    std::vector<Point> best_placement;
};

inline constexpr double kOracleGuard = 1e7;

/// Exhaustive search over m + 1 evenly spaced parameters per segment.
/// Throws std::invalid_argument if m < 1 or (m + 1)^k exceeds kOracleGuard.
OracleResult oracle_delta_star(const Instance& instance, int m);

}  // namespace segconn
