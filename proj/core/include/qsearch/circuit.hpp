#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsearch/statevector.hpp"

namespace qsearch {

enum class GateKind : std::uint8_t {
    H,
    X,
    Z,
    T,
    Tdg,
    CZ,
    CX,
    Swap,
    MCZ,           // multi-controlled Z: controls list + target
    OraclePrefix,  // abstract U_m gate, bound to the circuit target at sim time
    Barrier,       // zero-cost sequencing marker
};

struct Gate {
    GateKind kind = GateKind::Barrier;
    int q0 = -1;                 // single operand / first operand / MCZ target
    int q1 = -1;                 // second operand of two-qubit gates
    int suffix_len = 0;          // OraclePrefix m
    std::vector<int> controls;   // MCZ only

    static Gate one(GateKind kind, int q) {
        Gate g;
        g.kind = kind;
        g.q0 = q;
        return g;
    }
    static Gate two(GateKind kind, int a, int b) {
        Gate g;
        g.kind = kind;
        g.q0 = a;
        g.q1 = b;
        return g;
    }
    static Gate h(int q) { return one(GateKind::H, q); }
    static Gate x(int q) { return one(GateKind::X, q); }
    static Gate z(int q) { return one(GateKind::Z, q); }
    static Gate t(int q) { return one(GateKind::T, q); }
    static Gate tdg(int q) { return one(GateKind::Tdg, q); }
    static Gate cz(int a, int b) { return two(GateKind::CZ, a, b); }
    static Gate cx(int control, int target) {
        return two(GateKind::CX, control, target);
    }
    static Gate swap(int a, int b) { return two(GateKind::Swap, a, b); }
    static Gate mcz(std::vector<int> controls, int target);
    static Gate oracle_prefix(int suffix_len) {
        Gate g;
        g.kind = GateKind::OraclePrefix;
        g.suffix_len = suffix_len;
        return g;
    }
    static Gate barrier() {
        Gate g;
        g.kind = GateKind::Barrier;
        return g;
    }

    bool is_two_qubit() const {
        return kind == GateKind::CZ || kind == GateKind::CX ||
               kind == GateKind::Swap;
    }
    bool is_one_qubit() const {
        return kind == GateKind::H || kind == GateKind::X ||
               kind == GateKind::Z || kind == GateKind::T ||
               kind == GateKind::Tdg;
    }
};

/// Ordered gate list over num_logical qubits plus num_ancilla work qubits.
/// Ancillas occupy the wire indices after the logical ones; the interpreter
/// initialises them to |0> and checks that they end in |0>.
struct Circuit {
    int num_logical = 0;
    int num_ancilla = 0;
    std::vector<Gate> gates;
    std::optional<std::uint64_t> target;  // binding for OraclePrefix gates

    Circuit() = default;
    explicit Circuit(int num_logical_, int num_ancilla_ = 0)
        : num_logical(num_logical_), num_ancilla(num_ancilla_) {}

    int width() const { return num_logical + num_ancilla; }

    /// Appends one gate after validating its operands against width().
    void append(Gate gate);
};

/// Concatenation of two circuits of equal shape. Target bindings must
/// agree; a missing binding on one side adopts the other's.
Circuit compose(const Circuit& a, const Circuit& b);

/// Returns a copy with every OraclePrefix replaced by a Barrier, keeping
/// sequencing intact at zero cost (the diffusion-only experiment).
Circuit strip_oracles(const Circuit& circuit);

/// Counters filled in by the interpreter while it applies gates.
struct GateCounts {
    std::uint64_t base_oracle_calls = 0;  // OraclePrefix(0) applications
    std::uint64_t cz_applications = 0;
    std::uint64_t total_gates = 0;
};

/// Applies the circuit to `input` (width num_logical). Ancillas are
/// appended in |0>, verified to return to |0> within 1e-9, and stripped.
/// Throws std::runtime_error on an unbound oracle or a dirty ancilla.
StateVector simulate(const Circuit& circuit, const StateVector& input,
                     GateCounts* counts = nullptr);

/// Number of two-qubit gates: CZ and CX count 1, a SWAP counts 3, all
/// one-qubit gates and Barriers count 0. Throws std::invalid_argument if
/// an MCZ or OraclePrefix is still present.
std::uint64_t two_qubit_count(const Circuit& circuit);

/// Gate depth over per-qubit frontiers; Barriers synchronise every wire
/// without adding a layer.
std::uint64_t depth(const Circuit& circuit);

/// Line-oriented debug dump, one gate per line: `GATE q0 q1 ...`,
/// `ORACLE m`, `BARRIER`. MCZ lists controls first, target last.
std::string dump(const Circuit& circuit);

/// Parses the dump format back into a circuit of the given shape.
Circuit parse_dump(const std::string& text, int num_logical,
                   int num_ancilla = 0,
                   std::optional<std::uint64_t> target = std::nullopt);

/// Physical-qubit adjacency. Edges are unordered pairs; the graph must be
/// connected. Grid-built maps remember their dimensions for layouts.
struct CouplingMap {
    int num_physical = 0;
    std::set<std::pair<int, int>> edges;  // normalised a < b
    int grid_rows = 0;                    // 0 when not built as a grid
    int grid_cols = 0;

    CouplingMap(int num_physical_, std::set<std::pair<int, int>> edges_,
                int grid_rows_ = 0, int grid_cols_ = 0);

    bool is_grid() const { return grid_rows > 0 && grid_cols > 0; }
    bool adjacent(int a, int b) const;
    std::vector<std::vector<int>> adjacency() const;
};

/// Rectangular lattice with 4-neighbour connectivity; node r*cols + c.
CouplingMap grid_map(int rows, int cols);

/// Complete graph on n qubits.
CouplingMap full_map(int num_qubits);

/// Most-square factorisation rows x cols of `count`, ties broken toward
/// more rows (14 -> 7x2, 16 -> 4x4, primes -> count x 1).
std::pair<int, int> grid_dims_for(int count);

const char* gate_name(GateKind kind);

}  // namespace qsearch
