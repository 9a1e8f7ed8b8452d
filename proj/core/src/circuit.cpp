#include "qsearch/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qsearch {

namespace {

// Specialised kernels for the fixed gate set; the generic matrix paths in
// statevector.cpp stay reserved for arbitrary unitaries. All of these are
// plain strided loops with no complex multiplications beyond what the gate
// itself needs.

std::uint64_t stride_of(int width, int qubit) {
    return std::uint64_t{1} << (width - 1 - qubit);
}

void kernel_hadamard(StateVector& state, int qubit) {
    const std::uint64_t stride = stride_of(state.num_qubits(), qubit);
    const std::uint64_t dim = state.dim();
    const double s = 1.0 / std::sqrt(2.0);
    Amplitude* amps = state.amplitudes().data();
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
        for (std::uint64_t i = base; i < base + stride; ++i) {
            const Amplitude a0 = amps[i];
            const Amplitude a1 = amps[i + stride];
            amps[i] = Amplitude{(a0.real() + a1.real()) * s,
                                (a0.imag() + a1.imag()) * s};
            amps[i + stride] = Amplitude{(a0.real() - a1.real()) * s,
                                         (a0.imag() - a1.imag()) * s};
        }
    }
}

void kernel_x(StateVector& state, int qubit) {
    const std::uint64_t stride = stride_of(state.num_qubits(), qubit);
    const std::uint64_t dim = state.dim();
    Amplitude* amps = state.amplitudes().data();
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
        for (std::uint64_t i = base; i < base + stride; ++i) {
            std::swap(amps[i], amps[i + stride]);
        }
    }
}

void kernel_z(StateVector& state, int qubit) {
    const std::uint64_t stride = stride_of(state.num_qubits(), qubit);
    const std::uint64_t dim = state.dim();
    Amplitude* amps = state.amplitudes().data();
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
        for (std::uint64_t i = base; i < base + stride; ++i) {
            amps[i + stride] = -amps[i + stride];
        }
    }
}

void kernel_t(StateVector& state, int qubit, bool inverse) {
    const std::uint64_t stride = stride_of(state.num_qubits(), qubit);
    const std::uint64_t dim = state.dim();
    const double c = 1.0 / std::sqrt(2.0);
    const double s = inverse ? -c : c;
    Amplitude* amps = state.amplitudes().data();
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
        for (std::uint64_t i = base; i < base + stride; ++i) {
            const Amplitude a = amps[i + stride];
            amps[i + stride] = Amplitude{a.real() * c - a.imag() * s,
                                         a.real() * s + a.imag() * c};
        }
    }
}

// enumerate the dim/4 base indices with both given bit positions clear
template <typename Fn>
void for_each_pair_base(std::uint64_t dim, int pos1, int pos2, Fn&& fn) {
    const int pl = std::min(pos1, pos2);
    const int ph = std::max(pos1, pos2);
    const std::uint64_t low_mask = (std::uint64_t{1} << pl) - 1;
    const std::uint64_t mid_mask = (std::uint64_t{1} << (ph - 1 - pl)) - 1;
    const std::uint64_t quarter = dim >> 2;
    for (std::uint64_t k = 0; k < quarter; ++k) {
        const std::uint64_t low = k & low_mask;
        const std::uint64_t mid = (k >> pl) & mid_mask;
        const std::uint64_t high = k >> (ph - 1);
        fn((high << (ph + 1)) | (mid << (pl + 1)) | low);
    }
}

void kernel_cz(StateVector& state, int a, int b) {
    const int n = state.num_qubits();
    const std::uint64_t ma = stride_of(n, a);
    const std::uint64_t mb = stride_of(n, b);
    Amplitude* amps = state.amplitudes().data();
    for_each_pair_base(state.dim(), n - 1 - a, n - 1 - b, [&](std::uint64_t i) {
        amps[i | ma | mb] = -amps[i | ma | mb];
    });
}

void kernel_cx(StateVector& state, int control, int target) {
    const int n = state.num_qubits();
    const std::uint64_t mc = stride_of(n, control);
    const std::uint64_t mt = stride_of(n, target);
    Amplitude* amps = state.amplitudes().data();
    for_each_pair_base(state.dim(), n - 1 - control, n - 1 - target,
                       [&](std::uint64_t i) {
                           std::swap(amps[i | mc], amps[i | mc | mt]);
                       });
}

void kernel_swap(StateVector& state, int a, int b) {
    const int n = state.num_qubits();
    const std::uint64_t ma = stride_of(n, a);
    const std::uint64_t mb = stride_of(n, b);
    Amplitude* amps = state.amplitudes().data();
    for_each_pair_base(state.dim(), n - 1 - a, n - 1 - b, [&](std::uint64_t i) {
        std::swap(amps[i | ma], amps[i | mb]);
    });
}

std::vector<int> operands_of(const Gate& gate) {
    switch (gate.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::T:
        case GateKind::Tdg:
            return {gate.q0};
        case GateKind::CZ:
        case GateKind::CX:
        case GateKind::Swap:
            return {gate.q0, gate.q1};
        case GateKind::MCZ: {
            std::vector<int> ops = gate.controls;
            ops.push_back(gate.q0);
            return ops;
        }
        case GateKind::OraclePrefix:
        case GateKind::Barrier:
            return {};
    }
    return {};
}

}  // namespace

Gate Gate::mcz(std::vector<int> controls, int target) {
    Gate g = Gate::one(GateKind::MCZ, target);
    g.controls = std::move(controls);
    return g;
}

void Circuit::append(Gate gate) {
    std::vector<int> ops = operands_of(gate);
    std::sort(ops.begin(), ops.end());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i] < 0 || ops[i] >= width()) {
            throw std::out_of_range("gate operand outside circuit width");
        }
        if (i > 0 && ops[i] == ops[i - 1]) {
            throw std::invalid_argument("gate operands must be distinct");
        }
    }
    if (gate.kind == GateKind::OraclePrefix &&
        (gate.suffix_len < 0 || gate.suffix_len > num_logical)) {
        throw std::invalid_argument("oracle suffix length out of range");
    }
    gates.push_back(std::move(gate));
}

Circuit compose(const Circuit& a, const Circuit& b) {
    if (a.num_logical != b.num_logical || a.num_ancilla != b.num_ancilla) {
        throw std::invalid_argument("composed circuits must have equal shape");
    }
    if (a.target && b.target && *a.target != *b.target) {
        throw std::invalid_argument("composed circuits bind different targets");
    }
    Circuit out(a.num_logical, a.num_ancilla);
    out.target = a.target ? a.target : b.target;
    out.gates = a.gates;
    out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
    return out;
}

Circuit strip_oracles(const Circuit& circuit) {
    Circuit out = circuit;
    for (Gate& g : out.gates) {
        if (g.kind == GateKind::OraclePrefix) {
            g = Gate::barrier();
        }
    }
    return out;
}

StateVector simulate(const Circuit& circuit, const StateVector& input,
                     GateCounts* counts) {
    if (input.num_qubits() != circuit.num_logical) {
        throw std::invalid_argument("input width differs from num_logical");
    }
    const int width = circuit.width();
    const int anc = circuit.num_ancilla;
    StateVector state =
        anc > 0 ? tensor(input, basis_state(anc, 0)) : input;

    const std::uint64_t dim = state.dim();
    Amplitude* amps = state.amplitudes().data();
    auto bit_mask = [&](int qubit) {
        return std::uint64_t{1} << (width - 1 - qubit);
    };

    for (const Gate& gate : circuit.gates) {
        if (counts && gate.kind != GateKind::Barrier) ++counts->total_gates;
        switch (gate.kind) {
            case GateKind::H:
                kernel_hadamard(state, gate.q0);
                break;
            case GateKind::X:
                kernel_x(state, gate.q0);
                break;
            case GateKind::Z:
                kernel_z(state, gate.q0);
                break;
            case GateKind::T:
                kernel_t(state, gate.q0, false);
                break;
            case GateKind::Tdg:
                kernel_t(state, gate.q0, true);
                break;
            case GateKind::CZ:
                kernel_cz(state, gate.q0, gate.q1);
                if (counts) ++counts->cz_applications;
                break;
            case GateKind::CX:
                kernel_cx(state, gate.q0, gate.q1);
                break;
            case GateKind::Swap:
                kernel_swap(state, gate.q0, gate.q1);
                break;
            case GateKind::MCZ: {
                std::uint64_t mask = bit_mask(gate.q0);
                for (int c : gate.controls) mask |= bit_mask(c);
                for (std::uint64_t i = 0; i < dim; ++i) {
                    if ((i & mask) == mask) amps[i] = -amps[i];
                }
                break;
            }
            case GateKind::OraclePrefix: {
                if (!circuit.target) {
                    throw std::runtime_error(
                        "OraclePrefix gate without a target binding");
                }
                // Prefix comparison happens on the logical register; ancilla
                // wires sit below the logical suffix in the widened index.
                const int shift = gate.suffix_len + anc;
                const std::uint64_t start = (*circuit.target >> gate.suffix_len)
                                            << shift;
                const std::uint64_t block = std::uint64_t{1} << shift;
                for (std::uint64_t i = start; i < start + block; ++i) {
                    amps[i] = -amps[i];
                }
                if (counts && gate.suffix_len == 0) ++counts->base_oracle_calls;
                break;
            }
            case GateKind::Barrier:
                break;
        }
    }

    if (anc == 0) return state;

    const std::uint64_t anc_mask = (std::uint64_t{1} << anc) - 1;
    double residual = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & anc_mask) residual += std::norm(amps[i]);
    }
    if (residual > kStateTolerance) {
        throw std::runtime_error("ancilla qubits did not return to |0> (" +
                                 std::to_string(residual) +
                                 " residual probability)");
    }
    StateVector out(circuit.num_logical);
    for (std::uint64_t j = 0; j < out.dim(); ++j) {
        out[j] = amps[j << anc];
    }
    return out;
}

std::uint64_t two_qubit_count(const Circuit& circuit) {
    std::uint64_t count = 0;
    for (const Gate& gate : circuit.gates) {
        switch (gate.kind) {
            case GateKind::CZ:
            case GateKind::CX:
                ++count;
                break;
            case GateKind::Swap:
                count += 3;  // SWAP = 3 CX
                break;
            case GateKind::MCZ:
            case GateKind::OraclePrefix:
                throw std::invalid_argument(
                    "two_qubit_count on a circuit with undismantled " +
                    std::string(gate_name(gate.kind)) + " gate");
            default:
                break;
        }
    }
    return count;
}

std::uint64_t depth(const Circuit& circuit) {
    std::vector<std::uint64_t> frontier(circuit.width(), 0);
    for (const Gate& gate : circuit.gates) {
        if (gate.kind == GateKind::Barrier) {
            const std::uint64_t top =
                frontier.empty()
                    ? 0
                    : *std::max_element(frontier.begin(), frontier.end());
            std::fill(frontier.begin(), frontier.end(), top);
            continue;
        }
        std::vector<int> ops = operands_of(gate);
        if (gate.kind == GateKind::OraclePrefix) {
            ops.resize(circuit.width());
            for (int q = 0; q < circuit.width(); ++q) ops[q] = q;
        }
        std::uint64_t level = 0;
        for (int q : ops) level = std::max(level, frontier[q]);
        ++level;
        for (int q : ops) frontier[q] = level;
    }
    return frontier.empty()
               ? 0
               : *std::max_element(frontier.begin(), frontier.end());
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "TDG";
        case GateKind::CZ: return "CZ";
        case GateKind::CX: return "CX";
        case GateKind::Swap: return "SWAP";
        case GateKind::MCZ: return "MCZ";
        case GateKind::OraclePrefix: return "ORACLE";
        case GateKind::Barrier: return "BARRIER";
    }
    return "?";
}

std::string dump(const Circuit& circuit) {
    std::ostringstream out;
    for (const Gate& gate : circuit.gates) {
        out << gate_name(gate.kind);
        if (gate.kind == GateKind::OraclePrefix) {
            out << ' ' << gate.suffix_len;
        } else {
            for (int q : operands_of(gate)) out << ' ' << q;
        }
        out << '\n';
    }
    return out.str();
}

Circuit parse_dump(const std::string& text, int num_logical, int num_ancilla,
                   std::optional<std::uint64_t> target) {
    Circuit circuit(num_logical, num_ancilla);
    circuit.target = target;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string name;
        if (!(fields >> name)) continue;  // blank line
        std::vector<int> args;
        int v = 0;
        while (fields >> v) args.push_back(v);
        auto expect = [&](std::size_t n) {
            if (args.size() != n) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": " + name + " expects " +
                                            std::to_string(n) + " operand(s)");
            }
        };
        if (name == "H" || name == "X" || name == "Z" || name == "T" ||
            name == "TDG") {
            expect(1);
            GateKind k = name == "H"   ? GateKind::H
                         : name == "X" ? GateKind::X
                         : name == "Z" ? GateKind::Z
                         : name == "T" ? GateKind::T
                                       : GateKind::Tdg;
            circuit.append(Gate::one(k, args[0]));
        } else if (name == "CZ" || name == "CX" || name == "SWAP") {
            expect(2);
            GateKind k = name == "CZ"   ? GateKind::CZ
                         : name == "CX" ? GateKind::CX
                                        : GateKind::Swap;
            circuit.append(Gate::two(k, args[0], args[1]));
        } else if (name == "MCZ") {
            if (args.size() < 2) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": MCZ expects controls + target");
            }
            int target_q = args.back();
            args.pop_back();
            circuit.append(Gate::mcz(args, target_q));
        } else if (name == "ORACLE") {
            expect(1);
            circuit.append(Gate::oracle_prefix(args[0]));
        } else if (name == "BARRIER") {
            expect(0);
            circuit.append(Gate::barrier());
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": unknown gate '" + name + "'");
        }
    }
    return circuit;
}

CouplingMap::CouplingMap(int num_physical_,
                         std::set<std::pair<int, int>> edges_, int grid_rows_,
                         int grid_cols_)
    : num_physical(num_physical_),
      edges(std::move(edges_)),
      grid_rows(grid_rows_),
      grid_cols(grid_cols_) {
    if (num_physical < 1) {
        throw std::invalid_argument("coupling map needs at least one qubit");
    }
    std::set<std::pair<int, int>> normalised;
    for (auto [a, b] : edges) {
        if (a == b || a < 0 || b < 0 || a >= num_physical || b >= num_physical) {
            throw std::invalid_argument("coupling edge references bad qubit");
        }
        normalised.emplace(std::min(a, b), std::max(a, b));
    }
    edges = std::move(normalised);
    if (num_physical > 1) {
        // single connected component
        std::vector<std::vector<int>> adj = adjacency();
        std::vector<bool> seen(num_physical, false);
        std::queue<int> frontier;
        frontier.push(0);
        seen[0] = true;
        int visited = 1;
        while (!frontier.empty()) {
            int u = frontier.front();
            frontier.pop();
            for (int v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    ++visited;
                    frontier.push(v);
                }
            }
        }
        if (visited != num_physical) {
            throw std::invalid_argument("coupling map is not connected");
        }
    }
}

bool CouplingMap::adjacent(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
}

std::vector<std::vector<int>> CouplingMap::adjacency() const {
    std::vector<std::vector<int>> adj(num_physical);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

CouplingMap grid_map(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("grid dimensions must be positive");
    }
    std::set<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int id = r * cols + c;
            if (c + 1 < cols) edges.emplace(id, id + 1);
            if (r + 1 < rows) edges.emplace(id, id + cols);
        }
    }
    return CouplingMap(rows * cols, std::move(edges), rows, cols);
}

CouplingMap full_map(int num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("map needs at least one qubit");
    }
    std::set<std::pair<int, int>> edges;
    for (int a = 0; a < num_qubits; ++a) {
        for (int b = a + 1; b < num_qubits; ++b) edges.emplace(a, b);
    }
    return CouplingMap(num_qubits, std::move(edges));
}

std::pair<int, int> grid_dims_for(int count) {
    if (count < 1) {
        throw std::invalid_argument("qubit count must be positive");
    }
    for (int d = static_cast<int>(std::sqrt(static_cast<double>(count)));
         d >= 1; --d) {
        if (count % d == 0) return {count / d, d};  // rows >= cols
    }
    return {count, 1};
}

}  // namespace qsearch
