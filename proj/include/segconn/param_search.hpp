#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "segconn/decision.hpp"
#include "segconn/sqrt_func.hpp"

namespace segconn {

/// (lo, hi] with the decider false at lo and true at hi.
struct DeltaInterval {
    double lo = 0.0;
    double hi = 0.0;
};

using Decider = std::function<bool(double)>;

/// Parameters in the open interval where f - g changes sign, found by
/// sampling `samples` subintervals and bisecting each bracket. Functions that
/// agree to 1e-12 at every sample are treated as identical (no roots).
std::vector<double> root_between(const SqrtFunc& f, const SqrtFunc& g, DeltaInterval iv,
                                 int samples = 256);

/// Binary search among the values strictly inside `iv`; the result has no
/// such value strictly inside it. Uses O(log N) decider calls.
DeltaInterval refine_among(std::vector<double> values, DeltaInterval iv, const Decider& decider);

enum class EventKind { NeighborhoodEmptiness, EndpointCrossing, VoronoiCellChange, MergeCrossing };
inline constexpr std::size_t kEventKinds = 4;
const char* to_string(EventKind kind);

struct SolveDiagnostics {
    std::size_t decide_calls = 0;
    std::size_t refines = 0;
    std::array<std::size_t, kEventKinds> events{};
    std::size_t anomalies = 0;
    int samples = 0;
    bool fallback = false;
    /// Interval after every refinement that saw at least one candidate.
    std::vector<DeltaInterval> trace;
};

struct SolveResult {
    double delta_star = 0.0;
    std::vector<Point> witness;
    std::optional<TopologyTree> tree;
    SolveDiagnostics diagnostics;
};

/// Bisection on the decision procedure until hi - lo <= tol * hi + tol,
/// followed by a snap to a nearby exact distance.
SolveResult solve_bisect(const Preprocessing& prep, double tol = 1e-9);

struct ParametricOptions {
    int samples = 256;
    int max_samples = 4096;
    std::size_t max_anomalies = 200;
};

/// Parametric search over the decision procedure; falls back to bisection
/// (tol 1e-12) when the output check fails at every sample count.
SolveResult solve_parametric(const Preprocessing& prep, const ParametricOptions& options = {});

/// Smallest exact candidate distance in (max(lo, hi (1 - 1e-9)), hi] that
/// the decider accepts, or hi.
double snap_result(const Preprocessing& prep, DeltaInterval iv, const Decider& decider);

}  // namespace segconn
