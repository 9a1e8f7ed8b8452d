#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsearch/algorithms.hpp"
#include "qsearch/transpiler.hpp"

namespace qsearch {

/// Analytic two-qubit-gate cost of the global n-qubit controlled-phase
/// block under a decomposition strategy, applied to the register width
/// verbatim: 6n-6, 16n-24, or k*n^2 (k configurable, default 1).
struct CostModel {
    Strategy strategy = Strategy::AncillaChain;
    double zero_ancilla_k = 1.0;

    std::uint64_t block_cost(int width) const;
};

/// (3^{n/2} - 1)/2 two-qubit gates: one CZ per D2 application.
std::uint64_t recursive_diffusion_cost(int num_qubits);

/// Analytic Grover diffusion total: t(n) * block_cost(n).
std::uint64_t grover_diffusion_cost(
    int num_qubits, const CostModel& model,
    IterationRounding rounding = IterationRounding::PaperFloor);

struct CrossoverResult {
    Strategy strategy = Strategy::AncillaChain;
    /// Smallest even n where the recursive diffusion total reaches the
    /// Grover one; empty when none exists below scan_max.
    std::optional<int> crossover_n;
    int reference_n = 0;                  // published anchor to compare with
    bool reference_is_lower_bound = false;  // anchor means "beyond n=..."
    int scan_max = 0;
};

/// Closed-form scan over even n up to scan_max.
CrossoverResult crossover(const CostModel& model, int scan_max = 60,
                          IterationRounding rounding = IterationRounding::PaperFloor);

struct CostRow {
    int n = 0;
    std::string algorithm;  // "grover" | "recursive"
    std::string topology;   // "grid" | "full"
    std::string strategy;
    bool diffusion_only = false;
    std::uint64_t u0_calls = 0;
    std::uint64_t d2_calls = 0;
    std::uint64_t two_qubit_diffusion = 0;
    std::uint64_t two_qubit_total = 0;
    std::uint64_t swap_count = 0;
    std::optional<std::uint64_t> depth;  // constructed rows, JSON only
};

struct CostReport {
    std::vector<CostRow> rows;
};

enum class TopologyChoice { Grid, Full, Both };

struct SweepConfig {
    int n_min = 4;
    int n_max = 12;
    Strategy strategy = Strategy::AncillaChain;
    double zero_ancilla_k = 1.0;
    bool diffusion_only = false;
    TopologyChoice topology = TopologyChoice::Both;
    IterationRounding rounding = IterationRounding::PaperFloor;
    /// Formula-only rows. Forced for the strategies without an explicit
    /// lowering; when false, circuits are built, lowered and routed and
    /// the two-qubit gates are counted on the routed stream.
    bool analytic = false;
};

/// One row per even n, algorithm and topology. Constructed sweeps place
/// logical wires by snake order on grids and identity on full maps.
CostReport sweep(const SweepConfig& config);

/// CSV with the fixed header
/// n,algorithm,topology,strategy,diffusion_only,u0_calls,d2_calls,
/// two_qubit_diffusion,two_qubit_total,swap_count; rows sorted by
/// (n, algorithm, topology), LF endings, flags as 0/1. Byte-identical
/// across runs.
std::string to_csv(const CostReport& report);
void write_csv(const CostReport& report, const std::string& path);

/// JSON mirror: one object per row with the CSV field names, plus depth
/// on constructed rows.
std::string to_json(const CostReport& report);
void write_json(const CostReport& report, const std::string& path);

}  // namespace qsearch
