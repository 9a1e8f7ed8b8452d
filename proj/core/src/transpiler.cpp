#include "qsearch/transpiler.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

using Emit = std::function<void(const Gate&)>;

void emit_ccz(int a, int b, int t, const Emit& emit) {
    emit(Gate::cx(b, t));
    emit(Gate::tdg(t));
    emit(Gate::cx(a, t));
    emit(Gate::t(t));
    emit(Gate::cx(b, t));
    emit(Gate::tdg(t));
    emit(Gate::cx(a, t));
    emit(Gate::t(b));
    emit(Gate::t(t));
    emit(Gate::cx(a, b));
    emit(Gate::t(a));
    emit(Gate::tdg(b));
    emit(Gate::cx(a, b));
}

// Relative-phase Toffoli (three CX). Safe inside compute/uncompute pairs
// whose enclosed section is diagonal; the CCZ between the chains is.
void emit_rccx(int a, int b, int t, bool inverse, const Emit& emit) {
    const Gate fwd[] = {Gate::h(t),  Gate::t(t),   Gate::cx(b, t),
                        Gate::tdg(t), Gate::cx(a, t), Gate::t(t),
                        Gate::cx(b, t), Gate::tdg(t), Gate::h(t)};
    if (!inverse) {
        for (const Gate& g : fwd) emit(g);
        return;
    }
    for (int i = 8; i >= 0; --i) {
        Gate g = fwd[i];
        if (g.kind == GateKind::T) g.kind = GateKind::Tdg;
        else if (g.kind == GateKind::Tdg) g.kind = GateKind::T;
        emit(g);
    }
}

void emit_mcz_chain(std::span<const int> controls, int target,
                    std::span<const int> ancillas, const Emit& emit) {
    const int c = static_cast<int>(controls.size());
    if (c == 1) {
        emit(Gate::cz(controls[0], target));
        return;
    }
    if (c == 2) {
        emit_ccz(controls[0], controls[1], target, emit);
        return;
    }
    // fold controls into ancillas, phase in the middle, unfold
    emit_rccx(controls[0], controls[1], ancillas[0], false, emit);
    for (int i = 1; i <= c - 3; ++i) {
        emit_rccx(controls[i + 1], ancillas[i - 1], ancillas[i], false, emit);
    }
    emit_ccz(controls[c - 1], ancillas[c - 3], target, emit);
    for (int i = c - 3; i >= 1; --i) {
        emit_rccx(controls[i + 1], ancillas[i - 1], ancillas[i], true, emit);
    }
    emit_rccx(controls[0], controls[1], ancillas[0], true, emit);
}

void emit_lowered_oracle(const Circuit& circuit, int ancilla_base,
                         const Emit& emit) {
    if (!circuit.target) {
        throw std::runtime_error("cannot lower an unbound base oracle");
    }
    const int n = circuit.num_logical;
    const std::uint64_t x = *circuit.target;
    // X-conjugated MCZ over the logical register flips exactly |x>.
    auto conjugate = [&] {
        for (int q = 0; q < n; ++q) {
            if (((x >> (n - 1 - q)) & 1u) == 0) emit(Gate::x(q));
        }
    };
    conjugate();
    if (n == 1) {
        emit(Gate::z(0));
    } else {
        std::vector<int> controls(n - 1);
        for (int q = 0; q < n - 1; ++q) controls[q] = q;
        std::vector<int> ancillas(std::max(0, n - 3));
        for (std::size_t i = 0; i < ancillas.size(); ++i) {
            ancillas[i] = ancilla_base + static_cast<int>(i);
        }
        emit_mcz_chain(controls, n - 1, ancillas, emit);
    }
    conjugate();
}

void require_explicit(Strategy strategy) {
    if (strategy != Strategy::AncillaChain) {
        throw std::invalid_argument(
            std::string(strategy_name(strategy)) +
            " is an analytic cost model and has no explicit lowering");
    }
}

}  // namespace

const char* strategy_name(Strategy strategy) {
    switch (strategy) {
        case Strategy::AncillaChain: return "ancilla-chain";
        case Strategy::SingleAncilla: return "single-ancilla";
        case Strategy::ZeroAncilla: return "zero-ancilla";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "ancilla-chain") return Strategy::AncillaChain;
    if (name == "single-ancilla") return Strategy::SingleAncilla;
    if (name == "zero-ancilla") return Strategy::ZeroAncilla;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

Circuit lower_mcz(int num_controls, Strategy strategy) {
    require_explicit(strategy);
    if (num_controls < 1) {
        throw std::invalid_argument("MCZ needs at least one control");
    }
    const int ancillas = std::max(0, num_controls - 2);
    Circuit circuit(num_controls + 1, ancillas);
    std::vector<int> controls(num_controls);
    for (int i = 0; i < num_controls; ++i) controls[i] = i;
    std::vector<int> anc(ancillas);
    for (int i = 0; i < ancillas; ++i) anc[i] = num_controls + 1 + i;
    emit_mcz_chain(controls, num_controls, anc,
                   [&](const Gate& g) { circuit.append(g); });
    return circuit;
}

int lowered_ancilla_count(const Circuit& circuit) {
    int max_controls = 0;
    for (const Gate& gate : circuit.gates) {
        if (gate.kind == GateKind::MCZ) {
            max_controls =
                std::max(max_controls, static_cast<int>(gate.controls.size()));
        } else if (gate.kind == GateKind::OraclePrefix &&
                   gate.suffix_len == 0) {
            max_controls = std::max(max_controls, circuit.num_logical - 1);
        }
    }
    return std::max(0, max_controls - 2);
}

void for_each_lowered_gate(const Circuit& circuit, Strategy strategy,
                           const Emit& emit) {
    require_explicit(strategy);
    const int ancilla_base = circuit.width();
    for (const Gate& gate : circuit.gates) {
        switch (gate.kind) {
            case GateKind::MCZ: {
                std::vector<int> ancillas(
                    std::max<std::size_t>(0, gate.controls.size() - 2));
                for (std::size_t i = 0; i < ancillas.size(); ++i) {
                    ancillas[i] = ancilla_base + static_cast<int>(i);
                }
                emit_mcz_chain(gate.controls, gate.q0, ancillas, emit);
                break;
            }
            case GateKind::OraclePrefix:
                if (gate.suffix_len != 0) {
                    throw std::invalid_argument(
                        "expanded oracles (m > 0) must be rewritten into base "
                        "oracles before lowering");
                }
                emit_lowered_oracle(circuit, ancilla_base, emit);
                break;
            default:
                emit(gate);
                break;
        }
    }
}

Circuit lower_circuit(const Circuit& circuit, Strategy strategy) {
    Circuit out(circuit.num_logical,
                circuit.num_ancilla + lowered_ancilla_count(circuit));
    for_each_lowered_gate(circuit, strategy,
                          [&](const Gate& g) { out.append(g); });
    return out;
}

GreedyRouter::GreedyRouter(const CouplingMap& map,
                           std::span<const int> initial_layout, int width)
    : map_(&map), adjacency_(map.adjacency()) {
    if (width > map.num_physical) {
        throw std::invalid_argument("circuit is wider than the coupling map");
    }
    if (static_cast<int>(initial_layout.size()) < width) {
        throw std::invalid_argument("initial layout does not cover the circuit");
    }
    initial_.assign(initial_layout.begin(), initial_layout.begin() + width);
    phys_of_ = initial_;
    wire_at_.assign(map.num_physical, -1);
    for (int w = 0; w < width; ++w) {
        const int p = phys_of_[w];
        if (p < 0 || p >= map.num_physical || wire_at_[p] != -1) {
            throw std::invalid_argument("initial layout is not injective");
        }
        wire_at_[p] = w;
    }
}

std::vector<int> GreedyRouter::layout() const { return phys_of_; }

std::vector<int> GreedyRouter::path_between(int from, int to) const {
    // BFS distances toward `to`, then walk greedily from `from` picking the
    // smallest-index neighbour each step: the lexicographically smallest
    // shortest path.
    std::vector<int> dist(map_->num_physical, -1);
    std::queue<int> frontier;
    dist[to] = 0;
    frontier.push(to);
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (int v : adjacency_[u]) {
            if (dist[v] == -1) {
                dist[v] = dist[u] + 1;
                frontier.push(v);
            }
        }
    }
    std::vector<int> path{from};
    int cur = from;
    while (cur != to) {
        for (int v : adjacency_[cur]) {
            if (dist[v] == dist[cur] - 1) {
                cur = v;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

void GreedyRouter::swap_physical(int a, int b) {
    const int wa = wire_at_[a];
    const int wb = wire_at_[b];
    wire_at_[a] = wb;
    wire_at_[b] = wa;
    if (wa != -1) phys_of_[wa] = b;
    if (wb != -1) phys_of_[wb] = a;
}

void GreedyRouter::push(const Gate& gate, const Emit& emit) {
    switch (gate.kind) {
        case GateKind::Barrier:
            emit(gate);
            return;
        case GateKind::MCZ:
        case GateKind::OraclePrefix:
            throw std::invalid_argument(
                "router requires a fully lowered circuit");
        default:
            break;
    }
    if (gate.is_one_qubit()) {
        Gate g = gate;
        g.q0 = phys_of_[gate.q0];
        emit(g);
        return;
    }
    int pa = phys_of_[gate.q0];
    const int pb = phys_of_[gate.q1];
    if (!map_->adjacent(pa, pb)) {
        const std::vector<int> path = path_between(pa, pb);
        // move the first operand next to the second
        for (std::size_t i = 0; i + 2 < path.size(); ++i) {
            swap_physical(path[i], path[i + 1]);
            emit(Gate::swap(path[i], path[i + 1]));
            ++swaps_;
        }
        pa = path[path.size() - 2];
    }
    Gate g = gate;
    g.q0 = pa;
    g.q1 = pb;
    emit(g);
}

std::vector<int> identity_layout(int width) {
    std::vector<int> layout(width);
    for (int i = 0; i < width; ++i) layout[i] = i;
    return layout;
}

std::vector<int> snake_layout(const CouplingMap& map) {
    if (!map.is_grid()) {
        throw std::invalid_argument("snake layout needs a grid map");
    }
    std::vector<int> layout(map.num_physical);
    for (int w = 0; w < map.num_physical; ++w) {
        const int r = w / map.grid_cols;
        const int c_in_row = w % map.grid_cols;
        const int c = (r % 2 == 0) ? c_in_row : map.grid_cols - 1 - c_in_row;
        layout[w] = r * map.grid_cols + c;
    }
    return layout;
}

RoutedCircuit route(const Circuit& circuit, const CouplingMap& map,
                    std::span<const int> initial_layout) {
    GreedyRouter router(map, initial_layout, circuit.width());
    RoutedCircuit out;
    out.circuit = Circuit(map.num_physical);
    out.initial_layout = router.initial_layout();
    for (const Gate& gate : circuit.gates) {
        router.push(gate, [&](const Gate& g) { out.circuit.append(g); });
    }
    out.final_layout = router.layout();
    out.swap_count = router.swap_count();
    return out;
}

StateVector simulate_routed(const RoutedCircuit& routed,
                            const StateVector& input, int data_width) {
    const int total = routed.circuit.num_logical;
    const int width = static_cast<int>(routed.initial_layout.size());
    if (data_width > width || input.num_qubits() != data_width) {
        throw std::invalid_argument("data register width mismatch");
    }

    // wire order: data wires, then lowering ancillas, then idle physicals
    StateVector wires = data_width == total
                            ? input
                            : tensor(input, basis_state(total - data_width, 0));

    auto placement = [&](std::span<const int> layout) {
        std::vector<int> source_of(total, -1);
        for (int w = 0; w < width; ++w) source_of[layout[w]] = w;
        int next = width;
        for (int p = 0; p < total; ++p) {
            if (source_of[p] == -1) source_of[p] = next++;
        }
        return source_of;
    };

    const StateVector embedded =
        reorder_qubits(wires, placement(routed.initial_layout));
    const StateVector evolved = simulate(routed.circuit, embedded);

    // undo the final placement: wire w comes back from final_layout[w]
    std::vector<int> inverse(total, -1);
    const std::vector<int> fwd = placement(routed.final_layout);
    for (int p = 0; p < total; ++p) inverse[fwd[p]] = p;
    const StateVector unpermuted = reorder_qubits(evolved, inverse);

    const int tail = total - data_width;
    if (tail == 0) return unpermuted;
    const std::uint64_t tail_mask = (std::uint64_t{1} << tail) - 1;
    double residual = 0.0;
    for (std::uint64_t i = 0; i < unpermuted.dim(); ++i) {
        if (i & tail_mask) residual += std::norm(unpermuted[i]);
    }
    if (residual > kStateTolerance) {
        throw std::runtime_error(
            "routed circuit left work qubits out of |0> (" +
            std::to_string(residual) + " residual probability)");
    }
    StateVector out(data_width);
    for (std::uint64_t j = 0; j < out.dim(); ++j) {
        out[j] = unpermuted[j << tail];
    }
    return out;
}

}  // namespace qsearch
