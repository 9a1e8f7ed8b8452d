#include "qsearch/costbench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qsearch {

namespace {

// Streaming gate-census over a routed (or unrouted) gate sequence.
struct StreamCounter {
    std::uint64_t two_qubit = 0;
    std::vector<std::uint64_t> frontier;

    explicit StreamCounter(int width) : frontier(width, 0) {}

    void push(const Gate& gate) {
        switch (gate.kind) {
            case GateKind::CZ:
            case GateKind::CX:
                two_qubit += 1;
                break;
            case GateKind::Swap:
                two_qubit += 3;
                break;
            default:
                break;
        }
        if (gate.kind == GateKind::Barrier) {
            const std::uint64_t top =
                *std::max_element(frontier.begin(), frontier.end());
            std::fill(frontier.begin(), frontier.end(), top);
            return;
        }
        std::uint64_t level = frontier[gate.q0];
        if (gate.is_two_qubit()) level = std::max(level, frontier[gate.q1]);
        ++level;
        frontier[gate.q0] = level;
        if (gate.is_two_qubit()) frontier[gate.q1] = level;
    }

    std::uint64_t depth() const {
        return *std::max_element(frontier.begin(), frontier.end());
    }
};

struct PipelineResult {
    std::uint64_t two_qubit = 0;
    std::uint64_t swap_count = 0;
    std::uint64_t depth = 0;
};

// Lower + route a circuit without materialising anything, counting the
// two-qubit gates of the routed stream.
PipelineResult run_pipeline(const Circuit& circuit, const std::string& topology) {
    const int width = circuit.width() + lowered_ancilla_count(circuit);
    std::vector<int> layout;
    std::optional<CouplingMap> map;
    if (topology == "grid") {
        const auto [rows, cols] = grid_dims_for(width);
        map.emplace(grid_map(rows, cols));
        layout = snake_layout(*map);
    } else {
        map.emplace(full_map(width));
        layout = identity_layout(width);
    }
    GreedyRouter router(*map, layout, width);
    StreamCounter counter(map->num_physical);
    for_each_lowered_gate(circuit, Strategy::AncillaChain, [&](const Gate& g) {
        router.push(g, [&](const Gate& routed) { counter.push(routed); });
    });
    return {counter.two_qubit, router.swap_count(), counter.depth()};
}

Circuit build_algorithm_circuit(const std::string& algorithm, int n,
                                IterationRounding rounding) {
    // The sweep uses the toy target 0: its oracle lowers to X on every
    // qubit around the full-register MCZ.
    if (algorithm == "recursive") {
        return deterministic_search_circuit({n, 0});
    }
    const long long t = grover_iteration_count(n, rounding);
    return grover_circuit(n, 0, t);
}

std::vector<std::string> selected_topologies(TopologyChoice choice) {
    switch (choice) {
        case TopologyChoice::Grid: return {"grid"};
        case TopologyChoice::Full: return {"full"};
        case TopologyChoice::Both: return {"full", "grid"};
    }
    return {};
}

void sort_rows(CostReport& report) {
    std::sort(report.rows.begin(), report.rows.end(),
              [](const CostRow& a, const CostRow& b) {
                  return std::tie(a.n, a.algorithm, a.topology, a.strategy,
                                  a.diffusion_only) <
                         std::tie(b.n, b.algorithm, b.topology, b.strategy,
                                  b.diffusion_only);
              });
}

}  // namespace

std::uint64_t CostModel::block_cost(int width) const {
    if (width < 2) {
        throw std::invalid_argument("cost model needs width >= 2");
    }
    const auto w = static_cast<std::uint64_t>(width);
    switch (strategy) {
        case Strategy::AncillaChain:
            return 6 * w - 6;
        case Strategy::SingleAncilla:
            return 16 * w - 24;
        case Strategy::ZeroAncilla:
            return static_cast<std::uint64_t>(
                std::llround(zero_ancilla_k * static_cast<double>(w * w)));
    }
    return 0;
}

std::uint64_t recursive_diffusion_cost(int num_qubits) {
    return call_count_closed_form(num_qubits);
}

std::uint64_t grover_diffusion_cost(int num_qubits, const CostModel& model,
                                    IterationRounding rounding) {
    const auto t = static_cast<std::uint64_t>(
        grover_iteration_count(num_qubits, rounding));
    return t * model.block_cost(num_qubits);
}

CrossoverResult crossover(const CostModel& model, int scan_max,
                          IterationRounding rounding) {
    CrossoverResult result;
    result.strategy = model.strategy;
    result.scan_max = scan_max;
    switch (model.strategy) {
        case Strategy::AncillaChain:
            result.reference_n = 26;
            break;
        case Strategy::SingleAncilla:
            result.reference_n = 31;
            break;
        case Strategy::ZeroAncilla:
            result.reference_n = 36;
            result.reference_is_lower_bound = true;
            break;
    }
    for (int n = 2; n <= scan_max; n += 2) {
        if (recursive_diffusion_cost(n) >=
            grover_diffusion_cost(n, model, rounding)) {
            result.crossover_n = n;
            break;
        }
    }
    return result;
}

CostReport sweep(const SweepConfig& config) {
    if (config.n_min < 2 || config.n_min > config.n_max) {
        throw std::invalid_argument("bad sweep range");
    }
    if (config.n_min % 2 != 0 || config.n_max % 2 != 0) {
        throw std::invalid_argument("sweep bounds must be even");
    }
    const bool analytic =
        config.analytic || config.strategy != Strategy::AncillaChain;
    if (!analytic && config.n_max > 24) {
        throw std::invalid_argument(
            "constructed sweeps are limited to n <= 24; use an analytic "
            "strategy beyond");
    }

    const CostModel model{config.strategy, config.zero_ancilla_k};
    CostReport report;
    for (int n = config.n_min; n <= config.n_max; n += 2) {
        const std::uint64_t rec_calls = call_count_closed_form(n);
        const auto t = static_cast<std::uint64_t>(
            grover_iteration_count(n, config.rounding));
        for (const std::string algorithm : {"grover", "recursive"}) {
            const bool recursive = algorithm == "recursive";
            for (const std::string& topology :
                 selected_topologies(config.topology)) {
                CostRow row;
                row.n = n;
                row.algorithm = algorithm;
                row.topology = topology;
                row.strategy = strategy_name(config.strategy);
                row.diffusion_only = config.diffusion_only;
                row.u0_calls = recursive ? rec_calls : t;
                row.d2_calls = recursive ? rec_calls : 0;
                if (analytic) {
                    const std::uint64_t diffusion =
                        recursive ? rec_calls
                                  : t * model.block_cost(n);
                    row.two_qubit_diffusion = diffusion;
                    row.two_qubit_total =
                        config.diffusion_only
                            ? diffusion
                            : (recursive
                                   ? rec_calls * (1 + model.block_cost(n))
                                   : t * 2 * model.block_cost(n));
                } else {
                    const Circuit base =
                        build_algorithm_circuit(algorithm, n, config.rounding);
                    const PipelineResult diffusion =
                        run_pipeline(strip_oracles(base), topology);
                    row.two_qubit_diffusion = diffusion.two_qubit;
                    if (config.diffusion_only) {
                        row.two_qubit_total = diffusion.two_qubit;
                        row.swap_count = diffusion.swap_count;
                        row.depth = diffusion.depth;
                    } else {
                        const PipelineResult full = run_pipeline(base, topology);
                        row.two_qubit_total = full.two_qubit;
                        row.swap_count = full.swap_count;
                        row.depth = full.depth;
                    }
                }
                report.rows.push_back(std::move(row));
            }
        }
    }
    sort_rows(report);
    return report;
}

std::string to_csv(const CostReport& report) {
    if (report.rows.empty()) {
        throw std::invalid_argument("refusing to emit an empty report");
    }
    std::ostringstream out;
    out << "n,algorithm,topology,strategy,diffusion_only,u0_calls,d2_calls,"
           "two_qubit_diffusion,two_qubit_total,swap_count\n";
    for (const CostRow& row : report.rows) {
        out << row.n << ',' << row.algorithm << ',' << row.topology << ','
            << row.strategy << ',' << (row.diffusion_only ? 1 : 0) << ','
            << row.u0_calls << ',' << row.d2_calls << ','
            << row.two_qubit_diffusion << ',' << row.two_qubit_total << ','
            << row.swap_count << '\n';
    }
    return out.str();
}

void write_csv(const CostReport& report, const std::string& path) {
    const std::string text = to_csv(report);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

std::string to_json(const CostReport& report) {
    if (report.rows.empty()) {
        throw std::invalid_argument("refusing to emit an empty report");
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const CostRow& row : report.rows) {
        nlohmann::ordered_json r;
        r["n"] = row.n;
        r["algorithm"] = row.algorithm;
        r["topology"] = row.topology;
        r["strategy"] = row.strategy;
        r["diffusion_only"] = row.diffusion_only;
        r["u0_calls"] = row.u0_calls;
        r["d2_calls"] = row.d2_calls;
        r["two_qubit_diffusion"] = row.two_qubit_diffusion;
        r["two_qubit_total"] = row.two_qubit_total;
        r["swap_count"] = row.swap_count;
        if (row.depth) r["depth"] = *row.depth;
        rows.push_back(std::move(r));
    }
    return rows.dump(2) + "\n";
}

void write_json(const CostReport& report, const std::string& path) {
    const std::string text = to_json(report);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

}  // namespace qsearch
