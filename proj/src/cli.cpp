#include "segconn/cli.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "segconn/bench.hpp"
#include "segconn/decision.hpp"
#include "segconn/emst.hpp"
#include "segconn/generator.hpp"
#include "segconn/instance_io.hpp"
#include "segconn/oracle.hpp"
#include "segconn/param_search.hpp"

namespace segconn {

using nlohmann::json;

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eEni") == std::string::npos) {
        s += ".0";
    }
    return s;
}

namespace {

std::string format_point(Point p) { return "(" + format_real(p.x) + ", " + format_real(p.y) + ")"; }

json points_json(const std::vector<Point>& pts) {
    json arr = json::array();
    for (const Point& p : pts) {
        arr.push_back({p.x, p.y});
    }
    return arr;
}

void print_placement(std::ostream& out, const std::vector<Point>& placement) {
    for (std::size_t s = 0; s < placement.size(); ++s) {
        out << "  s" << s + 1 << " = " << format_point(placement[s]) << "\n";
    }
}

struct Edge {
    std::string u;
    std::string v;
    double length = 0.0;
};

// Longest edge of an MST over fixed points and placement. Fixed points are
// labelled p(k+1).. in input order, placed points s1..sk.
std::optional<Edge> bottleneck_edge(const Instance& inst, const std::vector<Point>& placement) {
    const std::vector<Point> pts = all_points(inst, placement);
    if (pts.size() < 2) {
        return std::nullopt;
    }
    const Mst mst = compute_emst(pts);
    const std::size_t fixed = inst.points.size();
    const std::size_t k = placement.size();
    auto label = [&](std::size_t i) {
        return i < fixed ? "p" + std::to_string(k + i + 1) : "s" + std::to_string(i - fixed + 1);
    };
    const MstEdge& e = mst.edges.front();
    return Edge{label(e.i), label(e.j), e.length};
}

int cmd_decide(const std::string& input, double delta, bool witness, bool as_json, std::ostream& out) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("--delta must be a finite non-negative number");
    }
    const Preprocessing prep = preprocess(load_instance(input));
    const Decision d = decide_full(prep, delta, witness);
    if (as_json) {
        json doc{{"command", "decide"}, {"delta", delta}, {"result", d.feasible}};
        if (witness && d.feasible) {
            doc["placement"] = points_json(d.witness);
            doc["tree"] = d.tree ? json(d.tree->to_string()) : json(nullptr);
        }
        out << doc.dump(2) << "\n";
    } else {
        out << (d.feasible ? "TRUE" : "FALSE") << "\n";
        if (witness && d.feasible) {
            out << "placement:\n";
            print_placement(out, d.witness);
            out << "tree: " << (d.tree ? d.tree->to_string() : std::string("(none)")) << "\n";
        }
    }
    return d.feasible ? 0 : 1;
}

int cmd_solve(const std::string& input, const std::string& mode, double tol, bool as_json, std::ostream& out) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("--tol must be positive");
    }
    const Instance inst = load_instance(input);
    const Preprocessing prep = preprocess(inst);
    const SolveResult r = mode == "bisect" ? solve_bisect(prep, tol) : solve_parametric(prep);
    const auto edge = bottleneck_edge(inst, r.witness);
    const SolveDiagnostics& dg = r.diagnostics;
    if (as_json) {
        json doc{{"command", "solve"},
                 {"delta_star", r.delta_star},
                 {"mode", mode},
                 {"witness", points_json(r.witness)}};
        doc["bottleneck_edge"] =
            edge ? json{{"u", edge->u}, {"v", edge->v}, {"length", edge->length}} : json(nullptr);
        json diag{{"decide_calls", dg.decide_calls}};
        if (mode == "parametric") {
            doc["fallback"] = dg.fallback;
            diag["refines"] = dg.refines;
            diag["anomalies"] = dg.anomalies;
            diag["samples"] = dg.samples;
            for (std::size_t i = 0; i < kEventKinds; ++i) {
                diag["events"][to_string(static_cast<EventKind>(i))] = dg.events[i];
            }
        }
        doc["diagnostics"] = diag;
        out << doc.dump(2) << "\n";
        return 0;
    }
    out << "delta_star=" << format_real(r.delta_star) << "\n";
    out << "mode=" << mode << "\n";
    if (mode == "parametric") {
        out << "fallback=" << (dg.fallback ? "true" : "false") << "\n";
    }
    out << "witness:\n";
    print_placement(out, r.witness);
    if (edge) {
        out << "bottleneck_edge=" << edge->u << "-" << edge->v << " length=" << format_real(edge->length) << "\n";
    } else {
        out << "bottleneck_edge=none\n";
    }
    out << "decide_calls=" << dg.decide_calls << "\n";
    return 0;
}

int cmd_oracle(const std::string& input, int grid, bool as_json, std::ostream& out) {
    const OracleResult r = oracle_delta_star(load_instance(input), grid);
    if (as_json) {
        out << json{{"command", "oracle"},
                    {"value", r.value},
                    {"error_bound", r.error_bound},
                    {"placement", points_json(r.best_placement)}}
                   .dump(2)
            << "\n";
        return 0;
    }
    out << "value=" << format_real(r.value) << "\n";
    out << "error_bound=" << format_real(r.error_bound) << "\n";
    out << "placement:\n";
    print_placement(out, r.best_placement);
    return 0;
}

int cmd_bench(const BenchOptions& options, bool as_json, std::ostream& out) {
    const auto rows = run_bench(options);
    if (as_json) {
        json arr = json::array();
        for (const BenchRow& r : rows) {
            arr.push_back({{"n", r.n},
                           {"k", r.k},
                           {"delta_star", r.delta_star},
                           {"decide_ms", r.decide_ms},
                           {"solve_ms", r.solve_ms}});
        }
        out << json{{"command", "bench"}, {"rows", arr}}.dump(2) << "\n";
        return 0;
    }
    out << bench_table(rows) << "\n" << bench_csv(rows);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Connectivity with segment-shaped uncertainty regions", "segconn"};
    app.require_subcommand(1);

    std::string input;
    std::string format = "text";
    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) {
            cmd->add_option("--input", input, "Instance file (JSON)")->required();
        }
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    double delta = 0.0;
    bool witness = false;
    CLI::App* decide_cmd = app.add_subcommand("decide", "Decide whether a placement exists for --delta");
    add_common(decide_cmd, true);
    decide_cmd->add_option("--delta", delta, "Distance threshold")->required();
    decide_cmd->add_flag("--witness", witness, "Print a placement and the accepting tree");

    std::string mode = "parametric";
    double tol = 1e-9;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Compute the smallest feasible delta");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--mode", mode, "bisect or parametric")->check(CLI::IsMember({"bisect", "parametric"}));
    solve_cmd->add_option("--tol", tol, "Bisection tolerance");

    int grid = 64;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force grid search");
    add_common(oracle_cmd, true);
    oracle_cmd->add_option("--grid", grid, "Grid subdivisions per segment")->required();

    GeneratorOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("--n", gen.n, "Total number of points")->required();
    gen_cmd->add_option("--k", gen.k, "Number of segments")->required();
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--clusters", gen.clusters, "Number of clusters");
    gen_cmd->add_option("--spread", gen.spread, "Cluster radius");
    gen_cmd->add_option("--max-length", gen.max_length, "Longest segment");

    BenchOptions bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Time decide and solve on generated instances");
    add_common(bench_cmd, false);
    bench_cmd->add_option("--sizes", bench.sizes, "Instance sizes")->delimiter(',');
    bench_cmd->add_option("--k", bench.ks, "Segment counts")->delimiter(',');
    bench_cmd->add_option("--seed", bench.seed, "Random seed");
    bench_cmd->add_option("--clusters", bench.clusters, "Number of clusters");
    bench_cmd->add_option("--spread", bench.spread, "Cluster radius");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const bool as_json = format == "json";
    try {
        if (*decide_cmd) {
            return cmd_decide(input, delta, witness, as_json, out);
        }
        if (*solve_cmd) {
            return cmd_solve(input, mode, tol, as_json, out);
        }
        if (*oracle_cmd) {
            return cmd_oracle(input, grid, as_json, out);
        }
        if (*gen_cmd) {
            out << serialize_instance(generate_instance(gen));
            return 0;
        }
        if (*bench_cmd) {
            return cmd_bench(bench, as_json, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace segconn
