#include "qsearch/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>

#include "qsearch/algorithms.hpp"
#include "qsearch/costbench.hpp"
#include "qsearch/parallel.hpp"
#include "qsearch/statevector.hpp"
#include "qsearch/transpiler.hpp"

namespace qsearch {

namespace {

constexpr double kDeterminismBound = 1.0 - 1e-9;

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

VerifyCheck check_search_determinism(int max_qubits, int threads) {
    VerifyCheck check{"search-determinism", true, ""};
    double worst = 1.0;
    int worst_n = 0;
    std::uint64_t worst_x = 0;

    auto run_targets = [&](int n, const std::vector<std::uint64_t>& targets) {
        std::vector<double> probs(targets.size(), 0.0);
        std::vector<std::uint64_t> measured(targets.size(), 0);
        parallel_for(targets.size(), threads, [&](std::size_t i) {
            const SearchResult r = run_search({n, targets[i]});
            probs[i] = r.probability;
            measured[i] = r.measured;
        });
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (measured[i] != targets[i]) {
                check.passed = false;
                check.detail = "n=" + std::to_string(n) + " measured " +
                               std::to_string(measured[i]) + " instead of " +
                               std::to_string(targets[i]);
            }
            if (probs[i] < worst) {
                worst = probs[i];
                worst_n = n;
                worst_x = targets[i];
            }
        }
    };

    for (int n = 2; n <= std::min(max_qubits, 12); n += 2) {
        std::vector<std::uint64_t> targets(std::uint64_t{1} << n);
        for (std::uint64_t x = 0; x < targets.size(); ++x) targets[x] = x;
        run_targets(n, targets);
    }
    for (int n = 14; n <= std::min(max_qubits, 16); n += 2) {
        std::mt19937_64 rng(0x5eedULL + n);
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (std::uint64_t{1} << n) - 1);
        std::vector<std::uint64_t> targets(50);
        for (auto& x : targets) x = dist(rng);
        run_targets(n, targets);
    }

    if (worst < kDeterminismBound) check.passed = false;
    if (check.detail.empty()) {
        check.detail = "worst probability " + fmt(worst) + " at n=" +
                       std::to_string(worst_n) + " x=" +
                       std::to_string(worst_x);
    }
    return check;
}

VerifyCheck check_call_tally(int max_qubits) {
    VerifyCheck check{"call-tally", true, ""};
    std::ostringstream detail;
    for (int n = 2; n <= std::min(max_qubits, 16); n += 2) {
        const std::uint64_t want = call_count_closed_form(n);
        const std::uint64_t alt = paper_call_count_closed_form(n);
        const SearchResult r = run_search({n, (std::uint64_t{1} << n) - 1});
        if (r.tally.u0_calls != want || r.tally.d2_calls != want) {
            check.passed = false;
            detail << "n=" << n << " counted (" << r.tally.u0_calls << ","
                   << r.tally.d2_calls << ") expected " << want << "; ";
        }
        if (n == std::min(max_qubits, 16) || n == 16) {
            detail << "n=" << n << ": instrumented " << r.tally.u0_calls
                   << " = (3^(n/2)-1)/2; alternate closed form (3^(n/2)-3)/2 = "
                   << alt << " is off by one";
        }
    }
    check.detail = detail.str();
    return check;
}

VerifyCheck check_oracle_expansion(int max_qubits) {
    VerifyCheck check{"oracle-expansion", true, ""};
    std::mt19937_64 rng(0xacc01adeULL);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    double worst = 0.0;
    int states_checked = 0;
    for (int n = 2; n <= std::min(max_qubits, 10); ++n) {
        std::uniform_int_distribution<std::uint64_t> target_dist(
            0, (std::uint64_t{1} << n) - 1);
        for (int m = 0; m + 2 <= n; m += 2) {
            for (int rep = 0; rep < 5; ++rep) {
                const std::uint64_t x = target_dist(rng);
                std::vector<Amplitude> coeffs(std::uint64_t{1} << (n - m));
                for (auto& c : coeffs) c = {coeff(rng), coeff(rng)};
                const StateVector input = suffix_uniform_state(n, m, coeffs);

                StateVector native = input;
                apply_prefix_phase_flip(native, x, m);
                const StateVector expanded =
                    simulate(expand_oracle(n, m, x), input);
                const double err = std::abs(overlap(native, expanded) - 1.0);
                worst = std::max(worst, err);
                ++states_checked;
            }
        }
    }
    if (worst > 1e-9) check.passed = false;
    check.detail = std::to_string(states_checked) +
                   " suffix-uniform states, worst |overlap-1| = " + fmt(worst);
    return check;
}

VerifyCheck check_partial_uniformity(int max_qubits) {
    VerifyCheck check{"partial-uniformity", true, ""};
    std::mt19937_64 rng(0x9a97ULL);
    double worst_prefix = 1.0;
    double worst_spread = 0.0;
    for (int n = 4; n <= std::min(max_qubits, 8); n += 2) {
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (std::uint64_t{1} << n) - 1);
        for (int k = 2; k <= n; k += 2) {
            const PartialSearchResult r = run_partial_search({n, dist(rng)}, k);
            worst_prefix = std::min(worst_prefix, r.prefix_probability);
            worst_spread = std::max(worst_spread, r.suffix_uniformity());
        }
    }
    if (std::abs(worst_prefix - 1.0) > 1e-9 || worst_spread > 1e-9) {
        check.passed = false;
    }
    check.detail = "prefix probability >= " + fmt(worst_prefix) +
                   ", max suffix spread " + fmt(worst_spread);
    return check;
}

VerifyCheck check_odd_prefix(int max_qubits) {
    VerifyCheck check{"odd-prefix-ancilla", true, ""};
    double worst_prefix = 1.0;
    double worst_spread = 0.0;
    int cases = 0;
    for (int n : {3, 5}) {
        if (n > max_qubits) continue;
        for (int k : {1, 3, 5}) {
            if (k > n) continue;
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
                const PartialSearchResult r = run_odd_prefix_search(n, x, k);
                worst_prefix = std::min(worst_prefix, r.prefix_probability);
                worst_spread = std::max(worst_spread, r.suffix_uniformity());
                ++cases;
            }
        }
    }
    if (cases == 0) {
        check.detail = "skipped (max-qubits below 3)";
        return check;
    }
    if (std::abs(worst_prefix - 1.0) > 1e-9 || worst_spread > 1e-9) {
        check.passed = false;
    }
    check.detail = std::to_string(cases) + " cases, prefix probability >= " +
                   fmt(worst_prefix) + ", max suffix spread " +
                   fmt(worst_spread);
    return check;
}

VerifyCheck check_grover_consistency(int max_qubits) {
    VerifyCheck check{"grover-consistency", true, ""};
    double worst = 0.0;
    std::mt19937_64 rng(0x96ULL);
    for (int n = 1; n <= std::min(max_qubits, 10); ++n) {
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (std::uint64_t{1} << n) - 1);
        const std::uint64_t x = dist(rng);
        const GroverPlan plan = grover_plan(n, x);
        const long long t_max = 2 * std::max<long long>(plan.iterations, 1);
        // one iteration at a time, reading the probability after each
        StateVector state = uniform_state(n);
        const Circuit step = grover_circuit(n, x, 1);
        for (long long t = 1; t <= t_max; ++t) {
            state = simulate(step, state);
            const double simulated = probability(state, x);
            const double predicted = grover_success_probability(n, t);
            worst = std::max(worst, std::abs(simulated - predicted));
        }
    }
    if (worst > 1e-9) check.passed = false;
    check.detail = "worst |simulated - sin^2((2t+1)theta)| = " + fmt(worst);
    return check;
}

VerifyCheck check_overcooking(int max_qubits) {
    VerifyCheck check{"grover-overcooking", true, ""};
    std::ostringstream detail;
    for (int n : {4, 6, 8}) {
        if (n > max_qubits) continue;
        // the success-maximising iteration count, from the closed form
        const long long guess = grover_iteration_count(n, IterationRounding::Nearest);
        long long best = 0;
        double best_p = 0.0;
        for (long long t = 0; t <= guess + 2; ++t) {
            const double p = grover_success_probability(n, t);
            if (p > best_p) {
                best_p = p;
                best = t;
            }
        }
        const Circuit at_best = grover_circuit(n, 1, best);
        const Circuit past = grover_circuit(n, 1, best + 1);
        const double p_best =
            probability(simulate(at_best, uniform_state(n)), 1);
        const double p_past = probability(simulate(past, uniform_state(n)), 1);
        if (!(p_past < p_best)) check.passed = false;
        detail << "n=" << n << ": t*=" << best << " p=" << fmt(p_best)
               << " -> t*+1 p=" << fmt(p_past) << "; ";
    }
    check.detail = detail.str();
    return check;
}

VerifyCheck check_transpiler_equivalence(int max_qubits) {
    VerifyCheck check{"transpiler-equivalence", true, ""};
    std::mt19937_64 rng(0x70b0ULL);
    double worst = 0.0;
    std::uint64_t full_swaps = 0;

    auto compare = [&](const Circuit& circuit, const StateVector& input) {
        const StateVector native = simulate(circuit, input);
        const Circuit lowered = lower_circuit(circuit, Strategy::AncillaChain);
        const StateVector low = simulate(lowered, input);
        worst = std::max(worst, std::abs(overlap(native, low) - 1.0));

        const int width = lowered.width();
        const CouplingMap full = full_map(width);
        const RoutedCircuit on_full =
            route(lowered, full, identity_layout(width));
        full_swaps += on_full.swap_count;
        const StateVector full_sim =
            simulate_routed(on_full, input, input.num_qubits());
        worst = std::max(worst, std::abs(overlap(native, full_sim) - 1.0));

        const auto [rows, cols] = grid_dims_for(width);
        const CouplingMap grid = grid_map(rows, cols);
        const RoutedCircuit on_grid = route(lowered, grid, snake_layout(grid));
        const StateVector grid_sim =
            simulate_routed(on_grid, input, input.num_qubits());
        worst = std::max(worst, std::abs(overlap(native, grid_sim) - 1.0));
    };

    for (int n = 2; n <= std::min(max_qubits, 8); n += 2) {
        std::uniform_int_distribution<std::uint64_t> dist(
            0, (std::uint64_t{1} << n) - 1);
        compare(deterministic_search_circuit({n, dist(rng)}), uniform_state(n));
    }
    if (max_qubits >= 4) {
        compare(grover_circuit(4, 5, 2), uniform_state(4));
    }

    if (worst > 1e-9 || full_swaps != 0) check.passed = false;
    check.detail = "worst |overlap-1| = " + fmt(worst) +
                   ", full-map swaps = " + std::to_string(full_swaps);
    return check;
}

VerifyCheck check_topology_invariance() {
    VerifyCheck check{"diffusion-topology-invariance", true, ""};
    std::ostringstream detail;
    for (int n = 4; n <= 18; n += 2) {
        SweepConfig config;
        config.n_min = config.n_max = n;
        config.diffusion_only = true;
        config.topology = TopologyChoice::Both;
        const CostReport report = sweep(config);
        std::uint64_t grid_count = 0;
        std::uint64_t full_count = 0;
        std::uint64_t grid_swaps = 0;
        for (const CostRow& row : report.rows) {
            if (row.algorithm != "recursive") continue;
            if (row.topology == "grid") {
                grid_count = row.two_qubit_total;
                grid_swaps = row.swap_count;
            } else {
                full_count = row.two_qubit_total;
            }
        }
        const std::uint64_t expected = recursive_diffusion_cost(n);
        if (grid_count != full_count || grid_swaps != 0 ||
            grid_count != expected) {
            check.passed = false;
            detail << "n=" << n << " grid=" << grid_count
                   << " full=" << full_count << " swaps=" << grid_swaps
                   << " expected=" << expected << "; ";
        }
    }
    if (check.passed) detail << "grid == full == (3^(n/2)-1)/2 for n in [4,18]";
    check.detail = detail.str();
    return check;
}

VerifyCheck check_diffusion_ratio() {
    VerifyCheck check{"diffusion-ratio", true, ""};
    const CostModel model{Strategy::ZeroAncilla, 1.0};
    double min_ratio = 1e300;
    for (int n = 6; n <= 18; n += 2) {
        const double ratio =
            static_cast<double>(grover_diffusion_cost(n, model)) /
            static_cast<double>(recursive_diffusion_cost(n));
        min_ratio = std::min(min_ratio, ratio);
    }
    if (min_ratio < 10.0) check.passed = false;
    const double at4 = static_cast<double>(grover_diffusion_cost(4, model)) /
                       static_cast<double>(recursive_diffusion_cost(4));
    check.detail = "min ratio " + fmt(min_ratio) +
                   " over n in [6,18]; n=4 ratio " + fmt(at4) + " (reported)";
    return check;
}

VerifyCheck check_crossovers() {
    VerifyCheck check{"crossover-anchors", true, ""};
    const CrossoverResult chain = crossover({Strategy::AncillaChain});
    const CrossoverResult single = crossover({Strategy::SingleAncilla});
    const CrossoverResult zero = crossover({Strategy::ZeroAncilla, 1.0});
    std::ostringstream detail;
    auto describe = [&](const CrossoverResult& r) {
        detail << strategy_name(r.strategy) << "="
               << (r.crossover_n ? std::to_string(*r.crossover_n) : "none")
               << " (reference "
               << (r.reference_is_lower_bound ? ">" : "~") << r.reference_n
               << ") ";
    };
    describe(chain);
    describe(single);
    describe(zero);
    if (!chain.crossover_n || !single.crossover_n || !zero.crossover_n ||
        !(*chain.crossover_n < *single.crossover_n &&
          *single.crossover_n < *zero.crossover_n)) {
        check.passed = false;
    } else {
        if (std::abs(*chain.crossover_n - chain.reference_n) > 3) {
            check.passed = false;
        }
        if (std::abs(*single.crossover_n - single.reference_n) > 3) {
            check.passed = false;
        }
        if (*zero.crossover_n <= zero.reference_n) check.passed = false;
    }
    check.detail = detail.str();
    return check;
}

VerifyCheck check_csv_determinism() {
    VerifyCheck check{"csv-determinism", true, ""};
    SweepConfig analytic;
    analytic.n_min = 4;
    analytic.n_max = 12;
    analytic.strategy = Strategy::ZeroAncilla;
    analytic.diffusion_only = true;
    SweepConfig constructed;
    constructed.n_min = 4;
    constructed.n_max = 8;
    const std::string a1 = to_csv(sweep(analytic));
    const std::string a2 = to_csv(sweep(analytic));
    const std::string c1 = to_csv(sweep(constructed));
    const std::string c2 = to_csv(sweep(constructed));
    const std::string j1 = to_json(sweep(constructed));
    const std::string j2 = to_json(sweep(constructed));
    if (a1 != a2 || c1 != c2 || j1 != j2) check.passed = false;
    check.detail = "repeated sweeps byte-identical (" +
                   std::to_string(a1.size() + c1.size()) + " bytes compared)";
    return check;
}

}  // namespace

VerifyReport run_verify_suite(int max_qubits, int threads) {
    VerifyReport report;
    report.checks.push_back(check_search_determinism(max_qubits, threads));
    report.checks.push_back(check_call_tally(max_qubits));
    report.checks.push_back(check_oracle_expansion(max_qubits));
    report.checks.push_back(check_partial_uniformity(max_qubits));
    report.checks.push_back(check_odd_prefix(max_qubits));
    report.checks.push_back(check_grover_consistency(max_qubits));
    report.checks.push_back(check_overcooking(max_qubits));
    report.checks.push_back(check_transpiler_equivalence(max_qubits));
    report.checks.push_back(check_topology_invariance());
    report.checks.push_back(check_diffusion_ratio());
    report.checks.push_back(check_crossovers());
    report.checks.push_back(check_csv_determinism());
    return report;
}

}  // namespace qsearch
