#include "segconn/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>

#include "segconn/decision.hpp"
#include "segconn/generator.hpp"
#include "segconn/param_search.hpp"

namespace segconn {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Mean time per call over a sweep of 16 deltas spanning (0, 2 delta_star],
// so both rejecting and accepting paths are covered at every size.
double time_decide(const Preprocessing& prep, double delta_star) {
    std::vector<double> deltas;
    for (int i = 1; i <= 16; ++i) {
        deltas.push_back(delta_star * i / 8.0);
    }
    auto sweep = [&](int reps) {
        const auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) {
            for (double d : deltas) {
                (void)decide(prep, d);
            }
        }
        return elapsed_ms(t0);
    };
    // Grow the batch until it takes a measurable amount of time.
    int reps = 1;
    while (sweep(reps) < 20.0 && reps < (1 << 20)) {
        reps *= 2;
    }
    double best = std::numeric_limits<double>::infinity();
    for (int batch = 0; batch < 7; ++batch) {
        best = std::min(best, sweep(reps) / (reps * static_cast<double>(deltas.size())));
    }
    return best;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& options) {
    std::vector<BenchRow> rows;
    for (int n : options.sizes) {
        for (int k : options.ks) {
            GeneratorOptions g;
            g.n = n;
            g.k = k;
            g.seed = options.seed;
            g.clusters = options.clusters;
            g.spread = options.spread;
            const Preprocessing prep = preprocess(generate_instance(g));

            BenchRow row;
            row.n = n;
            row.k = k;
            const auto t0 = Clock::now();
            row.delta_star = solve_parametric(prep).delta_star;
            row.solve_ms = elapsed_ms(t0);
            row.decide_ms = time_decide(prep, row.delta_star);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%8s %4s %14s %12s %12s\n", "n", "k", "delta_star", "decide_ms", "solve_ms");
    out += line;
    for (const BenchRow& r : rows) {
        std::snprintf(line, sizeof line, "%8d %4d %14.8g %12.6f %12.3f\n", r.n, r.k, r.delta_star, r.decide_ms,
                      r.solve_ms);
        out += line;
    }
    return out;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "n,k,decide_ms,solve_ms\n";
    char line[128];
    for (const BenchRow& r : rows) {
        std::snprintf(line, sizeof line, "%d,%d,%.6f,%.3f\n", r.n, r.k, r.decide_ms, r.solve_ms);
        out += line;
    }
    return out;
}

}  // namespace segconn
