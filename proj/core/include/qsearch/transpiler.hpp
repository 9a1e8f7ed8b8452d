#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/statevector.hpp"

namespace qsearch {

/// How multi-controlled phase gates turn into one- and two-qubit gates.
/// Only AncillaChain has an explicit construction; the other two exist as
/// analytic cost models (see costbench) and reject lowering requests.
enum class Strategy {
    AncillaChain,   // clean ancillas, 6c-6 two-qubit gates for c controls
    SingleAncilla,  // analytic model 16n-24
    ZeroAncilla,    // analytic model k*n^2
};

const char* strategy_name(Strategy strategy);
Strategy strategy_from_name(const std::string& name);

/// MCZ gadget on canonical wires: controls 0..c-1, target c, then c-2
/// clean ancillas. c=1 is a bare CZ; c=2 the standard six-CX CCZ; c>=3 a
/// chain of relative-phase Toffolis folding the controls into ancillas
/// around one CCZ, then uncomputed. Operator-exact with the native MCZ
/// when the ancillas start in |0>.
Circuit lower_mcz(int num_controls, Strategy strategy);

/// Streams the lowered form of `circuit` gate by gate: MCZ gates become
/// ancilla chains, a bound base oracle becomes its X-conjugated MCZ over
/// the logical register, everything else passes through. Gadget ancillas
/// live on the wires after the circuit's own; `lowered_ancilla_count`
/// says how many are needed. Throws on OraclePrefix with m > 0.
void for_each_lowered_gate(const Circuit& circuit, Strategy strategy,
                           const std::function<void(const Gate&)>& emit);

int lowered_ancilla_count(const Circuit& circuit);

/// Materialised lowering; only one- and two-qubit gates and Barriers
/// remain. Simulation-equivalent to the input.
Circuit lower_circuit(const Circuit& circuit, Strategy strategy);

struct RoutedCircuit {
    Circuit circuit;                  // over the physical register
    std::vector<int> initial_layout;  // wire -> physical
    std::vector<int> final_layout;
    std::uint64_t swap_count = 0;
};

/// Greedy SWAP-insertion router. Gates are pushed in circuit order; a
/// two-qubit gate on non-adjacent physicals moves its first operand along
/// the lexicographically smallest BFS shortest path. Fully deterministic.
class GreedyRouter {
  public:
    GreedyRouter(const CouplingMap& map, std::span<const int> initial_layout,
                 int width);

    void push(const Gate& gate, const std::function<void(const Gate&)>& emit);

    std::uint64_t swap_count() const { return swaps_; }
    const std::vector<int>& initial_layout() const { return initial_; }
    /// Current wire -> physical assignment.
    std::vector<int> layout() const;

  private:
    std::vector<int> path_between(int from, int to) const;
    void swap_physical(int a, int b);

    const CouplingMap* map_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> initial_;
    std::vector<int> phys_of_;  // wire -> physical
    std::vector<int> wire_at_;  // physical -> wire, -1 if unoccupied
    std::uint64_t swaps_ = 0;
};

std::vector<int> identity_layout(int width);

/// Boustrophedon placement on a grid map: row 0 left to right, row 1
/// right to left, and so on, so consecutive wires are physically
/// adjacent. Length num_physical.
std::vector<int> snake_layout(const CouplingMap& map);

/// Routes a fully lowered circuit onto the map. The result acts on
/// map.num_physical wires; unmapped physicals idle in |0>.
RoutedCircuit route(const Circuit& circuit, const CouplingMap& map,
                    std::span<const int> initial_layout);

/// Simulates a routed circuit on a data-register input: embeds per the
/// initial layout, runs, undoes the final layout, verifies every
/// non-data wire returned to |0>, and slices the data register back out.
StateVector simulate_routed(const RoutedCircuit& routed,
                            const StateVector& input, int data_width);

}  // namespace qsearch
