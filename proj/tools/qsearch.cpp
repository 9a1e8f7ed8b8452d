// qsearch: deterministic quantum search, partial search, the Grover
// baseline, transpilation cost sweeps and crossover estimates on a dense
// statevector simulator.
//
// Exit codes: 0 success, 1 violated algorithm claim (a bug), 2 usage.
// stdout is byte-identical across identical invocations; timings go to
// stderr.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsearch/algorithms.hpp"
#include "qsearch/costbench.hpp"
#include "qsearch/parallel.hpp"
#include "qsearch/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr double kDeterminismBound = 1.0 - 1e-9;

struct Timer {
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    ~Timer() {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        std::fprintf(stderr, "elapsed_ms=%lld\n",
                     static_cast<long long>(elapsed.count()));
    }
};

std::string fixed12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string bits_of(std::uint64_t value, int width) {
    std::string s(width, '0');
    for (int i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1u) s[i] = '1';
    }
    return s;
}

void print_kv(const std::string& key, const std::string& value) {
    std::printf("%-22s %s\n", key.c_str(), value.c_str());
}

qsearch::IterationRounding rounding_from(const std::string& name) {
    if (name == "floor") return qsearch::IterationRounding::PaperFloor;
    if (name == "nearest") return qsearch::IterationRounding::Nearest;
    throw CLI::ValidationError("--rounding", "must be floor or nearest");
}

int cmd_search(int n, std::uint64_t x, bool as_json) {
    if (n % 2 != 0) {
        std::fprintf(stderr,
                     "error: the full search needs an even qubit count; for "
                     "odd registers use `qsearch partial --odd`\n");
        return 2;
    }
    if (n < 2 || n > 20) {
        std::fprintf(stderr, "error: --qubits must be even and in [2, 20]\n");
        return 2;
    }
    if (x >= (std::uint64_t{1} << n)) {
        std::fprintf(stderr, "error: --target out of range for %d qubits\n", n);
        return 2;
    }
    Timer timer;
    const qsearch::SearchResult result = qsearch::run_search({n, x});
    const std::uint64_t closed = qsearch::call_count_closed_form(n);
    const std::uint64_t alternate = qsearch::paper_call_count_closed_form(n);
    if (as_json) {
        ordered_json out;
        out["command"] = "search";
        out["n"] = n;
        out["target"] = x;
        out["measured"] = result.measured;
        out["probability"] = result.probability;
        out["u0_calls"] = result.tally.u0_calls;
        out["d2_calls"] = result.tally.d2_calls;
        out["u0_closed_form"] = closed;
        out["alternate_closed_form"] = alternate;
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        print_kv("n", std::to_string(n));
        print_kv("target", std::to_string(x));
        print_kv("measured", std::to_string(result.measured));
        print_kv("probability", fixed12(result.probability));
        print_kv("u0_calls", std::to_string(result.tally.u0_calls));
        print_kv("d2_calls", std::to_string(result.tally.d2_calls));
        print_kv("closed_form (3^(n/2)-1)/2", std::to_string(closed));
        print_kv("alternate (3^(n/2)-3)/2",
                 std::to_string(alternate) + "  [differs from the "
                 "instrumented count by 1]");
    }
    if (result.measured != x || result.probability < kDeterminismBound) {
        std::fprintf(stderr,
                     "error: determinism violated (probability %.12g); this "
                     "signals an implementation bug\n",
                     result.probability);
        return 1;
    }
    return 0;
}

int cmd_partial(int n, std::uint64_t x, int k, bool odd, bool as_json) {
    if (k < 1 || k > n) {
        std::fprintf(stderr, "error: --prefix must lie in [1, %d]\n", n);
        return 2;
    }
    if (x >= (std::uint64_t{1} << n)) {
        std::fprintf(stderr, "error: --target out of range for %d qubits\n", n);
        return 2;
    }
    if (odd && k % 2 == 0) {
        std::fprintf(stderr, "error: --odd expects an odd --prefix\n");
        return 2;
    }
    if (!odd && k % 2 != 0) {
        std::fprintf(stderr,
                     "error: odd prefix lengths need the ancilla variant; "
                     "pass --odd\n");
        return 2;
    }
    if (odd && n % 2 == 0) {
        std::fprintf(stderr,
                     "error: the ancilla variant applies to odd registers; "
                     "even registers use even prefixes directly\n");
        return 2;
    }
    if (!odd && n % 2 != 0) {
        std::fprintf(stderr,
                     "error: even-prefix search needs an even register\n");
        return 2;
    }
    Timer timer;
    const qsearch::PartialSearchResult result =
        odd ? qsearch::run_odd_prefix_search(n, x, k)
            : qsearch::run_partial_search({n, x}, k);
    const std::string prefix_bits = bits_of(result.prefix_value, k);
    if (as_json) {
        ordered_json out;
        out["command"] = "partial";
        out["n"] = n;
        out["target"] = x;
        out["prefix_len"] = k;
        out["odd"] = odd;
        out["prefix_bits"] = prefix_bits;
        out["prefix_value"] = result.prefix_value;
        out["prefix_probability"] = result.prefix_probability;
        out["suffix_uniformity"] = result.suffix_uniformity();
        out["u0_calls"] = result.tally.u0_calls;
        out["d2_calls"] = result.tally.d2_calls;
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        print_kv("n", std::to_string(n));
        print_kv("target", std::to_string(x));
        print_kv("prefix_len", std::to_string(k));
        print_kv("variant", odd ? "ancilla (odd prefix)" : "direct");
        print_kv("prefix_bits", prefix_bits);
        print_kv("prefix_probability", fixed12(result.prefix_probability));
        print_kv("suffix_uniformity", fixed12(result.suffix_uniformity()));
        print_kv("u0_calls", std::to_string(result.tally.u0_calls));
        print_kv("d2_calls", std::to_string(result.tally.d2_calls));
    }
    if (std::abs(result.prefix_probability - 1.0) > 1e-9 ||
        result.suffix_uniformity() > 1e-9) {
        std::fprintf(stderr, "error: partial-search claim violated\n");
        return 1;
    }
    return 0;
}

int cmd_grover(int n, std::uint64_t x, std::optional<long long> iterations,
               const std::string& rounding, bool as_json) {
    if (n < 1 || n > 20) {
        std::fprintf(stderr, "error: --qubits must lie in [1, 20]\n");
        return 2;
    }
    if (x >= (std::uint64_t{1} << n)) {
        std::fprintf(stderr, "error: --target out of range for %d qubits\n", n);
        return 2;
    }
    Timer timer;
    const qsearch::GroverPlan plan =
        qsearch::grover_plan(n, x, rounding_from(rounding));
    const long long t = iterations.value_or(plan.iterations);
    if (t < 0) {
        std::fprintf(stderr, "error: --iterations must be non-negative\n");
        return 2;
    }
    const double predicted = qsearch::grover_success_probability(n, t);
    const qsearch::StateVector state = qsearch::simulate(
        qsearch::grover_circuit(n, x, t), qsearch::uniform_state(n));
    const double simulated = qsearch::probability(state, x);
    if (as_json) {
        ordered_json out;
        out["command"] = "grover";
        out["n"] = n;
        out["target"] = x;
        out["iterations"] = t;
        out["theta"] = plan.theta;
        out["predicted_success"] = predicted;
        out["simulated_success"] = simulated;
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        print_kv("n", std::to_string(n));
        print_kv("target", std::to_string(x));
        print_kv("iterations", std::to_string(t));
        print_kv("theta", fixed12(plan.theta));
        print_kv("predicted_success", fixed12(predicted));
        print_kv("simulated_success", fixed12(simulated));
    }
    if (std::abs(predicted - simulated) > 1e-9) {
        std::fprintf(stderr,
                     "error: simulation disagrees with sin^2((2t+1)theta)\n");
        return 1;
    }
    return 0;
}

int cmd_bench(int n_min, int n_max, const std::string& topology,
              const std::string& strategy, bool diffusion_only, bool analytic,
              double zero_k, const std::string& rounding,
              const std::string& out_path, const std::string& json_path) {
    qsearch::SweepConfig config;
    if (n_min % 2 != 0 || n_max % 2 != 0) {
        std::fprintf(stderr, "error: --min/--max must be even\n");
        return 2;
    }
    config.n_min = n_min;
    config.n_max = n_max;
    config.strategy = qsearch::strategy_from_name(strategy);
    config.zero_ancilla_k = zero_k;
    config.diffusion_only = diffusion_only;
    config.analytic = analytic;
    config.rounding = rounding_from(rounding);
    if (topology == "grid") {
        config.topology = qsearch::TopologyChoice::Grid;
    } else if (topology == "full") {
        config.topology = qsearch::TopologyChoice::Full;
    } else if (topology == "both") {
        config.topology = qsearch::TopologyChoice::Both;
    } else {
        std::fprintf(stderr, "error: --topology must be grid, full or both\n");
        return 2;
    }
    Timer timer;
    const qsearch::CostReport report = qsearch::sweep(config);
    if (!json_path.empty()) qsearch::write_json(report, json_path);
    if (out_path.empty()) {
        std::printf("%s", qsearch::to_csv(report).c_str());
        return 0;
    }
    qsearch::write_csv(report, out_path);
    // summary: grover/recursive per (n, topology)
    for (int n = config.n_min; n <= config.n_max; n += 2) {
        for (const std::string topo : {"full", "grid"}) {
            std::uint64_t grover = 0;
            std::uint64_t recursive = 0;
            for (const qsearch::CostRow& row : report.rows) {
                if (row.n != n || row.topology != topo) continue;
                if (row.algorithm == "grover") grover = row.two_qubit_total;
                if (row.algorithm == "recursive") recursive = row.two_qubit_total;
            }
            if (grover == 0 || recursive == 0) continue;
            std::printf("n=%-3d topology=%-4s grover/recursive = %s\n", n,
                        topo.c_str(),
                        fixed12(static_cast<double>(grover) /
                                static_cast<double>(recursive))
                            .c_str());
        }
    }
    return 0;
}

int cmd_crossover(const std::string& strategy, double zero_k, int scan_max,
                  const std::string& rounding, bool as_json) {
    Timer timer;
    const qsearch::CostModel model{qsearch::strategy_from_name(strategy),
                                   zero_k};
    const qsearch::CrossoverResult result =
        qsearch::crossover(model, scan_max, rounding_from(rounding));
    if (as_json) {
        ordered_json out;
        out["command"] = "crossover";
        out["strategy"] = strategy;
        if (result.crossover_n) {
            out["crossover_n"] = *result.crossover_n;
            out["delta"] = *result.crossover_n - result.reference_n;
        } else {
            out["crossover_n"] = nullptr;
            out["delta"] = nullptr;
        }
        out["reference_n"] = result.reference_n;
        out["reference_is_lower_bound"] = result.reference_is_lower_bound;
        out["scan_max"] = result.scan_max;
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        print_kv("strategy", strategy);
        if (result.crossover_n) {
            print_kv("crossover_n", std::to_string(*result.crossover_n));
            const int delta = *result.crossover_n - result.reference_n;
            print_kv("reference_n",
                     (result.reference_is_lower_bound ? "> " : "~ ") +
                         std::to_string(result.reference_n));
            print_kv("delta", (delta >= 0 ? "+" : "") + std::to_string(delta));
            if (result.reference_is_lower_bound) {
                print_kv("reference_satisfied",
                         *result.crossover_n > result.reference_n ? "yes"
                                                                  : "no");
            }
        } else {
            print_kv("crossover_n",
                     "none below scan bound " + std::to_string(result.scan_max));
            print_kv("reference_n", std::to_string(result.reference_n));
        }
    }
    return 0;
}

int cmd_verify(int max_qubits, int threads) {
    if (max_qubits < 2 || max_qubits > 20) {
        std::fprintf(stderr, "error: --max-qubits must lie in [2, 20]\n");
        return 2;
    }
    Timer timer;
    const qsearch::VerifyReport report =
        qsearch::run_verify_suite(max_qubits, threads);
    for (const qsearch::VerifyCheck& check : report.checks) {
        std::printf("[%s] %-32s %s\n", check.passed ? "PASS" : "FAIL",
                    check.name.c_str(), check.detail.c_str());
    }
    std::printf("%s\n", report.all_passed() ? "verify: all checks passed"
                                            : "verify: FAILURES present");
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Deterministic quantum search via recursive oracle expansion: "
        "simulator, transpiler and gate-cost benchmarks"};
    app.require_subcommand(1);

    int n = 4;
    std::uint64_t target = 0;
    int prefix = 2;
    bool odd = false;
    bool as_json = false;
    std::optional<long long> iterations;
    std::string rounding = "floor";
    int n_min = 4;
    int n_max = 12;
    std::string topology = "both";
    std::string strategy = "ancilla-chain";
    bool diffusion_only = false;
    bool analytic = false;
    double zero_k = 1.0;
    std::string out_path;
    std::string json_path;
    int scan_max = 60;
    int max_qubits = 10;
    const int threads = qsearch::default_thread_count();

    CLI::App* search = app.add_subcommand(
        "search", "Run the full deterministic search (even n)");
    search->add_option("--qubits,-n", n, "register width (even, 2..20)")
        ->required();
    search->add_option("--target,-x", target, "marked basis index")->required();
    search->add_flag("--json", as_json, "emit JSON instead of the table");

    CLI::App* partial = app.add_subcommand(
        "partial", "Reveal only the first k target bits");
    partial->add_option("--qubits,-n", n, "register width")->required();
    partial->add_option("--target,-x", target, "marked basis index")
        ->required();
    partial->add_option("--prefix,-k", prefix, "bits to reveal")->required();
    partial->add_flag("--odd", odd,
                      "odd prefix via the ancilla-conditioned oracle");
    partial->add_flag("--json", as_json, "emit JSON instead of the table");

    CLI::App* grover = app.add_subcommand(
        "grover", "Run the Grover baseline and compare with the closed form");
    grover->add_option("--qubits,-n", n, "register width (1..20)")->required();
    grover->add_option("--target,-x", target, "marked basis index")->required();
    grover->add_option("--iterations,-t", iterations,
                       "override the planned iteration count");
    grover->add_option("--rounding", rounding, "floor (default) or nearest");
    grover->add_flag("--json", as_json, "emit JSON instead of the table");

    CLI::App* bench = app.add_subcommand(
        "bench", "Two-qubit gate-count sweep; CSV per the fixed schema");
    bench->add_option("--min", n_min, "smallest even n")->required();
    bench->add_option("--max", n_max, "largest even n")->required();
    bench->add_option("--topology", topology, "grid, full or both (default)");
    bench->add_option("--strategy", strategy,
                      "ancilla-chain (constructed), single-ancilla or "
                      "zero-ancilla (analytic)");
    bench->add_flag("--diffusion-only", diffusion_only,
                    "replace oracles with barriers and count diffusion alone");
    bench->add_flag("--analytic", analytic,
                    "force formula-only rows for ancilla-chain too");
    bench->add_option("--zero-k", zero_k,
                      "quadratic constant of the zero-ancilla model");
    bench->add_option("--rounding", rounding, "floor (default) or nearest");
    bench->add_option("--out", out_path, "CSV destination (stdout if absent)");
    bench->add_option("--json-out", json_path, "JSON mirror destination");

    CLI::App* cross = app.add_subcommand(
        "crossover", "Smallest even n where recursive diffusion cost "
                     "reaches Grover's under a cost model");
    cross->add_option("--strategy", strategy,
                      "ancilla-chain, single-ancilla or zero-ancilla")
        ->required();
    cross->add_option("--zero-k", zero_k,
                      "quadratic constant of the zero-ancilla model");
    cross->add_option("--scan-max", scan_max, "even-n scan bound");
    cross->add_option("--rounding", rounding, "floor (default) or nearest");
    cross->add_flag("--json", as_json, "emit JSON instead of the table");

    CLI::App* verify = app.add_subcommand(
        "verify", "Run the full property suite; exit 0 iff every check passes");
    verify->add_option("--max-qubits,-m", max_qubits,
                       "largest simulated register (default 10)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (search->parsed()) return cmd_search(n, target, as_json);
        if (partial->parsed()) return cmd_partial(n, target, prefix, odd, as_json);
        if (grover->parsed())
            return cmd_grover(n, target, iterations, rounding, as_json);
        if (bench->parsed())
            return cmd_bench(n_min, n_max, topology, strategy, diffusion_only,
                             analytic, zero_k, rounding, out_path, json_path);
        if (cross->parsed())
            return cmd_crossover(strategy, zero_k, scan_max, rounding, as_json);
        if (verify->parsed()) return cmd_verify(max_qubits, threads);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
