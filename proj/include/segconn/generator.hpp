#pragma once

#include <cstdint>

#include "segconn/instance.hpp"

namespace segconn {

struct GeneratorOptions {
    int n = 10;  // total points, segments included
    int k = 1;
    std::uint64_t seed = 1;
    int clusters = 3;
    double spread = 1.0;
    double max_length = 2.0;
};

/// Gaussian clusters of fixed points; each segment sits near the midpoint
/// between a cluster and its nearest neighbouring cluster. Deterministic in
/// the seed. Throws std::invalid_argument unless n > k >= 0, clusters >= 1,
/// spread > 0 and max_length >= 0.
Instance generate_instance(const GeneratorOptions& options);

}  // namespace segconn
