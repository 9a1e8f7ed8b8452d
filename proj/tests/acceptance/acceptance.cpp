// Acceptance suite: ten numbered criteria, each printed as one PASS/FAIL
// line with its measured margin. Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsearch/algorithms.hpp"
#include "qsearch/costbench.hpp"
#include "qsearch/parallel.hpp"
#include "qsearch/statevector.hpp"
#include "qsearch/transpiler.hpp"

#ifndef QSEARCH_CLI_PATH
#define QSEARCH_CLI_PATH ""
#endif

using namespace qsearch;

namespace {

int failures = 0;

void report(int criterion, bool passed, const std::string& what,
            const std::string& detail) {
    if (!passed) ++failures;
    std::printf("[%s] criterion %2d: %-28s %s\n", passed ? "PASS" : "FAIL",
                criterion, what.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- 1
// Full-search determinism: every target for even n <= 12, fifty random
// targets for n in {14, 16}; success probability >= 1 - 1e-9.
void criterion_determinism(int threads) {
    double worst = 1.0;
    int worst_n = 0;
    bool measured_ok = true;
    std::uint64_t total = 0;

    auto run_block = [&](int n, const std::vector<std::uint64_t>& targets) {
        std::vector<double> probs(targets.size());
        std::vector<std::uint64_t> hits(targets.size());
        parallel_for(targets.size(), threads, [&](std::size_t i) {
            const SearchResult r = run_search({n, targets[i]});
            probs[i] = r.probability;
            hits[i] = r.measured;
        });
        for (std::size_t i = 0; i < targets.size(); ++i) {
            measured_ok = measured_ok && hits[i] == targets[i];
            if (probs[i] < worst) {
                worst = probs[i];
                worst_n = n;
            }
        }
        total += targets.size();
    };

    for (int n = 2; n <= 12; n += 2) {
        std::vector<std::uint64_t> all(std::uint64_t{1} << n);
        for (std::uint64_t x = 0; x < all.size(); ++x) all[x] = x;
        run_block(n, all);
    }
    for (int n : {14, 16}) {
        std::mt19937_64 rng(0xdecadeULL + n);
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (std::uint64_t{1} << n) - 1);
        std::vector<std::uint64_t> sample(50);
        for (auto& x : sample) x = dist(rng);
        run_block(n, sample);
    }

    const bool passed = measured_ok && worst >= 1.0 - 1e-9;
    report(1, passed, "search determinism",
           std::to_string(total) + " searches, worst success 1-" +
               fmt(1.0 - worst) + " (at n=" + std::to_string(worst_n) + ")");
}

// ---------------------------------------------------------------- 2
// The exact four-element case: n=2, one iteration, certainty within
// 1e-12 for all four targets.
void criterion_exact_n4() {
    double worst = 1.0;
    bool planned_one = true;
    for (std::uint64_t x = 0; x < 4; ++x) {
        planned_one = planned_one && grover_plan(2, x).iterations == 1;
        const StateVector out =
            simulate(grover_circuit(2, x, 1), uniform_state(2));
        worst = std::min(worst, probability(out, x));
    }
    const bool passed = planned_one && worst >= 1.0 - 1e-12;
    report(2, passed, "exact n=2 Grover case",
           "t=1 planned, worst success 1-" + fmt(1.0 - worst) +
               " (tolerance 1e-12)");
}

// ---------------------------------------------------------------- 3
// Instrumented call counts for even n <= 16 equal (3^{n/2}-1)/2; the
// alternate closed form (3^{n/2}-3)/2 is printed and flagged.
void criterion_call_counts() {
    bool passed = true;
    std::ostringstream detail;
    for (int n = 2; n <= 16; n += 2) {
        const std::uint64_t expected = call_count_closed_form(n);
        const SearchResult r = run_search({n, std::uint64_t{1}});
        passed = passed && r.tally.u0_calls == expected &&
                 r.tally.d2_calls == expected;
    }
    const std::uint64_t counted16 = call_count_closed_form(16);
    const std::uint64_t alternate16 = paper_call_count_closed_form(16);
    detail << "u0 = d2 = (3^(n/2)-1)/2 for n<=16; at n=16: " << counted16
           << "; alternate form (3^(n/2)-3)/2 gives " << alternate16
           << " [one less than the instrumented count at every n]";
    report(3, passed, "call-count law", detail.str());
}

// ---------------------------------------------------------------- 4
// Constructed oracle vs native prefix flip on >= 100 random
// suffix-uniform states: overlap 1 within 1e-9, phase included.
void criterion_oracle_expansion() {
    std::mt19937_64 rng(0x0e4ac1eULL);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    double worst = 0.0;
    int states = 0;
    for (int n = 2; n <= 10; ++n) {
        std::uniform_int_distribution<std::uint64_t> target_dist(
            0, (std::uint64_t{1} << n) - 1);
        for (int m = 0; m + 2 <= n; m += 2) {
            for (int rep = 0; rep < 5; ++rep) {
                const std::uint64_t x = target_dist(rng);
                std::vector<Amplitude> coeffs(std::uint64_t{1} << (n - m));
                for (auto& c : coeffs) c = {coeff(rng), coeff(rng)};
                const StateVector input = suffix_uniform_state(n, m, coeffs);
                StateVector ideal = input;
                apply_prefix_phase_flip(ideal, x, m);
                const StateVector constructed =
                    simulate(expand_oracle(n, m, x), input);
                worst = std::max(worst,
                                 std::abs(overlap(ideal, constructed) - 1.0));
                ++states;
            }
        }
    }
    report(4, states >= 100 && worst <= 1e-9, "oracle expansion",
           std::to_string(states) + " suffix-uniform states, worst |overlap-1| " +
               fmt(worst) + " (tolerance 1e-9, phase-exact)");
}

// ---------------------------------------------------------------- 5
// Partial search: prefix certain, suffix flat, both parities.
void criterion_partial_search() {
    std::mt19937_64 rng(0x9a9aULL);
    double worst_prefix = 1.0;
    double worst_spread = 0.0;
    for (int n : {4, 6, 8}) {
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (std::uint64_t{1} << n) - 1);
        for (int k = 2; k <= n; k += 2) {
            const PartialSearchResult r = run_partial_search({n, dist(rng)}, k);
            worst_prefix = std::min(worst_prefix, r.prefix_probability);
            worst_spread = std::max(worst_spread, r.suffix_uniformity());
        }
    }
    for (int n : {3, 5}) {
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (std::uint64_t{1} << n) - 1);
        for (int k : {1, 3}) {
            const PartialSearchResult r =
                run_odd_prefix_search(n, dist(rng), k);
            worst_prefix = std::min(worst_prefix, r.prefix_probability);
            worst_spread = std::max(worst_spread, r.suffix_uniformity());
        }
    }
    const bool passed =
        std::abs(worst_prefix - 1.0) <= 1e-9 && worst_spread < 1e-9;
    report(5, passed, "partial search",
           "prefix certainty 1-" + fmt(1.0 - worst_prefix) +
               ", suffix spread " + fmt(worst_spread) + " (tolerances 1e-9)");
}

// ---------------------------------------------------------------- 6
// Grover consistency for n <= 10 and t <= 2 t_opt, plus overcooking past
// the success-maximising count for n in {4, 6, 8}.
void criterion_grover_consistency() {
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
        const std::uint64_t x = (std::uint64_t{1} << n) >> 1;
        const long long t_opt = grover_plan(n, x).iterations;
        StateVector state = uniform_state(n);
        const Circuit step = grover_circuit(n, x, 1);
        for (long long t = 1; t <= 2 * std::max<long long>(t_opt, 1); ++t) {
            state = simulate(step, state);
            worst = std::max(worst, std::abs(probability(state, x) -
                                             grover_success_probability(n, t)));
        }
    }
    bool overcooked = true;
    for (int n : {4, 6, 8}) {
        long long best = 0;
        double best_p = 0.0;
        for (long long t = 0;
             t <= grover_iteration_count(n, IterationRounding::Nearest) + 2;
             ++t) {
            const double p = grover_success_probability(n, t);
            if (p > best_p) {
                best_p = p;
                best = t;
            }
        }
        const double at_best = probability(
            simulate(grover_circuit(n, 2, best), uniform_state(n)), 2);
        const double past = probability(
            simulate(grover_circuit(n, 2, best + 1), uniform_state(n)), 2);
        overcooked = overcooked && past < at_best;
    }
    report(6, worst <= 1e-9 && overcooked, "grover consistency",
           "worst |sim - sin^2((2t+1)theta)| " + fmt(worst) +
               " (tolerance 1e-9); overcooking confirmed at n=4,6,8");
}

// ---------------------------------------------------------------- 7
// Transpiler semantics: lowered and routed circuits reproduce the
// undecomposed states for n <= 8 on grid and full maps; ancillas clean;
// zero SWAPs on full maps and for snake-routed diffusion-only circuits.
void criterion_transpiler() {
    double worst = 0.0;
    std::uint64_t full_swaps = 0;
    std::uint64_t snake_swaps = 0;
    bool clean = true;

    auto compare = [&](const Circuit& circuit, const StateVector& input) {
        const StateVector native = simulate(circuit, input);
        const Circuit lowered = lower_circuit(circuit, Strategy::AncillaChain);
        try {
            const StateVector low = simulate(lowered, input);
            worst = std::max(worst, std::abs(overlap(native, low) - 1.0));

            const int width = lowered.width();
            const RoutedCircuit on_full =
                route(lowered, full_map(width), identity_layout(width));
            full_swaps += on_full.swap_count;
            worst = std::max(
                worst, std::abs(overlap(native, simulate_routed(
                                                    on_full, input,
                                                    input.num_qubits())) -
                                1.0));

            const auto [rows, cols] = grid_dims_for(width);
            const CouplingMap grid = grid_map(rows, cols);
            const RoutedCircuit on_grid =
                route(lowered, grid, snake_layout(grid));
            worst = std::max(
                worst, std::abs(overlap(native, simulate_routed(
                                                    on_grid, input,
                                                    input.num_qubits())) -
                                1.0));
        } catch (const std::exception&) {
            clean = false;  // dirty ancilla or work qubit
        }
    };

    std::mt19937_64 rng(0x7a2aULL);
    for (int n = 2; n <= 8; n += 2) {
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (std::uint64_t{1} << n) - 1);
        compare(deterministic_search_circuit({n, dist(rng)}), uniform_state(n));
    }
    compare(grover_circuit(4, 11, 2), uniform_state(4));
    compare(grover_circuit(6, 20, 5), uniform_state(6));

    for (int n = 4; n <= 18; n += 2) {
        const Circuit diffusion =
            strip_oracles(deterministic_search_circuit({n, 0}));
        const auto [rows, cols] = grid_dims_for(n);
        const CouplingMap grid = grid_map(rows, cols);
        snake_swaps += route(diffusion, grid, snake_layout(grid)).swap_count;
    }

    const bool passed =
        clean && worst <= 1e-9 && full_swaps == 0 && snake_swaps == 0;
    report(7, passed, "transpiler semantics",
           "worst |overlap-1| " + fmt(worst) +
               " (tolerance 1e-9); full-map swaps " +
               std::to_string(full_swaps) + ", snake diffusion swaps " +
               std::to_string(snake_swaps) + ", ancillas clean");
}

// ---------------------------------------------------------------- 8
// Diffusion-cost advantage: zero-ancilla analytic ratio >= 10 for even
// n in [6, 18]; the n=4 ratio is reported but not gated.
void criterion_diffusion_ratio() {
    const CostModel model{Strategy::ZeroAncilla, 1.0};
    double min_ratio = 1e300;
    for (int n = 6; n <= 18; n += 2) {
        min_ratio = std::min(
            min_ratio, static_cast<double>(grover_diffusion_cost(n, model)) /
                           static_cast<double>(recursive_diffusion_cost(n)));
    }
    const double at4 = static_cast<double>(grover_diffusion_cost(4, model)) /
                       static_cast<double>(recursive_diffusion_cost(4));
    report(8, min_ratio >= 10.0, "diffusion cost ratio",
           "min grover/recursive " + fmt(min_ratio) +
               " over even n in [6,18] (gate >= 10); n=4 ratio " + fmt(at4) +
               " reported, not gated");
}

// ---------------------------------------------------------------- 9
// Crossover ordering and anchors: the two point anchors within +-3, the
// third satisfied as a lower bound, deltas printed.
void criterion_crossovers() {
    const CrossoverResult chain = crossover({Strategy::AncillaChain});
    const CrossoverResult single = crossover({Strategy::SingleAncilla});
    const CrossoverResult zero = crossover({Strategy::ZeroAncilla, 1.0});
    bool passed = chain.crossover_n && single.crossover_n && zero.crossover_n;
    std::ostringstream detail;
    if (passed) {
        const int c = *chain.crossover_n;
        const int s = *single.crossover_n;
        const int z = *zero.crossover_n;
        passed = c < s && s < z && std::abs(c - 26) <= 3 &&
                 std::abs(s - 31) <= 3 && z > 36;
        detail << "ancilla-chain " << c << " (ref 26, delta "
               << std::showpos << c - 26 << std::noshowpos << "), "
               << "single-ancilla " << s << " (ref 31, delta " << std::showpos
               << s - 31 << std::noshowpos << "), zero-ancilla " << z
               << " (ref beyond 36, delta " << std::showpos << z - 36
               << std::noshowpos << ")";
    } else {
        detail << "missing crossover below the scan bound";
    }
    report(9, passed, "crossover anchors", detail.str());
}

// ---------------------------------------------------------------- 10
// Reproducibility: bench runs byte-identical via the CLI; CLI verify at
// max-qubits 10 exits 0 in under five minutes.
void criterion_reproducibility() {
    const std::string cli = QSEARCH_CLI_PATH;
    if (cli.empty()) {
        report(10, false, "reproducibility", "CLI path not wired in");
        return;
    }
    auto shell = [](const std::string& cmd) {
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    };

    const int b1 = shell(cli +
                         " bench --min 4 --max 14 --diffusion-only --strategy "
                         "zero-ancilla --out acc_bench_a.csv >/dev/null "
                         "2>/dev/null");
    const int b2 = shell(cli +
                         " bench --min 4 --max 14 --diffusion-only --strategy "
                         "zero-ancilla --out acc_bench_b.csv >/dev/null "
                         "2>/dev/null");
    const std::string bytes = slurp("acc_bench_a.csv");
    const bool bench_ok =
        b1 == 0 && b2 == 0 && !bytes.empty() && bytes == slurp("acc_bench_b.csv");

    const auto start = std::chrono::steady_clock::now();
    const int verify_code =
        shell(cli + " verify --max-qubits 10 >/dev/null 2>/dev/null");
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool verify_ok = verify_code == 0 && seconds < 300.0;

    report(10, bench_ok && verify_ok, "reproducibility",
           std::string("bench byte-identical: ") + (bench_ok ? "yes" : "NO") +
               "; verify exit " + std::to_string(verify_code) + " in " +
               fmt(seconds) + "s (budget 300s)");
}

}  // namespace

int main() {
    const int threads = default_thread_count();
    const auto start = std::chrono::steady_clock::now();

    criterion_determinism(threads);
    criterion_exact_n4();
    criterion_call_counts();
    criterion_oracle_expansion();
    criterion_partial_search();
    criterion_grover_consistency();
    criterion_transpiler();
    criterion_diffusion_ratio();
    criterion_crossovers();
    criterion_reproducibility();

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("RESULT: %d/10 criteria passed in %.1fs\n", 10 - failures,
                seconds);
    return failures == 0 ? 0 : 1;
}
