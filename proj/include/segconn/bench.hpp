#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace segconn {

struct BenchOptions {
    std::vector<int> sizes;
    std::vector<int> ks{1};
    std::uint64_t seed = 1;
    int clusters = 4;
    double spread = 1.0;
};

struct BenchRow {
    int n = 0;
    int k = 0;
    double delta_star = 0.0;
    double decide_ms = 0.0;  // mean over a delta sweep up to twice the optimum
    double solve_ms = 0.0;   // parametric solve, preprocessing excluded
};

/// One row per (size, k). Decision time is the best per-call average over
/// several timed batches.
std::vector<BenchRow> run_bench(const BenchOptions& options);

std::string bench_table(const std::vector<BenchRow>& rows);
/// Header "n,k,decide_ms,solve_ms".
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace segconn
