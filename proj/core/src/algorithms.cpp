#include "qsearch/algorithms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

void check_target(int num_qubits, std::uint64_t target) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    if (target >= (std::uint64_t{1} << num_qubits)) {
        throw std::out_of_range("target index out of range for " +
                                std::to_string(num_qubits) + " qubits");
    }
}

void append_d2(Circuit& circuit, int qa, int qb) {
    circuit.append(Gate::h(qa));
    circuit.append(Gate::h(qb));
    circuit.append(Gate::x(qa));
    circuit.append(Gate::x(qb));
    circuit.append(Gate::cz(qa, qb));
    circuit.append(Gate::x(qa));
    circuit.append(Gate::x(qb));
    circuit.append(Gate::h(qa));
    circuit.append(Gate::h(qb));
}

void append_expansion(Circuit& circuit, int num_qubits, int suffix_len) {
    if (suffix_len == 0) {
        circuit.append(Gate::oracle_prefix(0));
        return;
    }
    const int qa = num_qubits - suffix_len;
    append_expansion(circuit, num_qubits, suffix_len - 2);
    append_d2(circuit, qa, qa + 1);
    append_expansion(circuit, num_qubits, suffix_len - 2);
    append_d2(circuit, qa, qa + 1);
    append_expansion(circuit, num_qubits, suffix_len - 2);
}

CallTally tally_from(const GateCounts& counts) {
    return {counts.base_oracle_calls, counts.cz_applications};
}

// Reduced statistics of the block of basis states sharing the given
// prefix: total probability, plus min/max single-state probability inside
// the block.
struct BlockStats {
    double total = 0.0;
    double min_prob = 0.0;
    double max_prob = 0.0;
};

BlockStats block_stats(const StateVector& state, std::uint64_t prefix_value,
                       int prefix_len) {
    const int suffix_bits = state.num_qubits() - prefix_len;
    const std::uint64_t base = prefix_value << suffix_bits;
    const std::uint64_t size = std::uint64_t{1} << suffix_bits;
    BlockStats stats;
    stats.min_prob = 1.0;
    for (std::uint64_t j = 0; j < size; ++j) {
        const double p = probability(state, base | j);
        stats.total += p;
        stats.min_prob = std::min(stats.min_prob, p);
        stats.max_prob = std::max(stats.max_prob, p);
    }
    return stats;
}

}  // namespace

Circuit d2_subcircuit(int width, int qa, int qb) {
    if (qa == qb) {
        throw std::invalid_argument("diffuser needs two distinct qubits");
    }
    Circuit circuit(width);
    append_d2(circuit, qa, qb);
    return circuit;
}

Circuit expand_oracle(int num_qubits, int suffix_len, std::uint64_t target) {
    check_target(num_qubits, target);
    if (suffix_len % 2 != 0) {
        throw std::invalid_argument("oracle expansion needs an even suffix");
    }
    if (suffix_len < 0 || suffix_len > num_qubits - 2) {
        throw std::invalid_argument("suffix length must lie in [0, n-2]");
    }
    Circuit circuit(num_qubits);
    circuit.target = target;
    append_expansion(circuit, num_qubits, suffix_len);
    return circuit;
}

Circuit deterministic_search_circuit(const SearchSpec& spec) {
    return partial_search_circuit(spec, spec.num_qubits);
}

Circuit partial_search_circuit(const SearchSpec& spec, int prefix_len) {
    check_target(spec.num_qubits, spec.target);
    const int n = spec.num_qubits;
    if (n % 2 != 0) {
        throw std::invalid_argument(
            "search needs an even qubit count; odd prefixes go through the "
            "ancilla variant");
    }
    if (prefix_len % 2 != 0 || prefix_len < 2 || prefix_len > n) {
        throw std::invalid_argument("prefix length must be even and in [2, n]");
    }
    Circuit circuit(n);
    circuit.target = spec.target;
    for (int stage = 0; stage < prefix_len / 2; ++stage) {
        append_expansion(circuit, n, n - 2 * stage - 2);
        append_d2(circuit, 2 * stage, 2 * stage + 1);
    }
    return circuit;
}

Circuit odd_prefix_search_circuit(int num_qubits, std::uint64_t target,
                                  int prefix_len) {
    check_target(num_qubits, target);
    if (prefix_len % 2 == 0) {
        throw std::invalid_argument("even prefixes do not need the ancilla");
    }
    if (num_qubits % 2 == 0) {
        throw std::invalid_argument(
            "the ancilla variant needs an odd register (widened width must "
            "be even)");
    }
    if (prefix_len < 1 || prefix_len > num_qubits) {
        throw std::invalid_argument("prefix length must lie in [1, n]");
    }
    // Widen by one most-significant qubit. Conditioning the base oracle on
    // the ancilla being |1> is exactly the full-width match against the
    // widened target with ancilla bit 1.
    const int wide = num_qubits + 1;
    const std::uint64_t wide_target =
        (std::uint64_t{1} << num_qubits) | target;
    Circuit circuit(wide);
    circuit.target = wide_target;
    circuit.append(Gate::h(0));  // ancilla |0> -> uniform
    const Circuit stages =
        partial_search_circuit({wide, wide_target}, prefix_len + 1);
    return compose(circuit, stages);
}

GroverPlan grover_plan(int num_qubits, std::uint64_t target,
                       IterationRounding rounding) {
    check_target(num_qubits, target);
    GroverPlan plan;
    plan.num_qubits = num_qubits;
    plan.target = target;
    plan.theta = std::asin(std::pow(2.0, -0.5 * num_qubits));
    plan.iterations = grover_iteration_count(num_qubits, rounding);
    plan.predicted_success =
        grover_success_probability(num_qubits, plan.iterations);
    return plan;
}

long long grover_iteration_count(int num_qubits, IterationRounding rounding) {
    if (num_qubits < 1) {
        throw std::invalid_argument("qubit count must be positive");
    }
    const double theta = std::asin(std::pow(2.0, -0.5 * num_qubits));
    const double raw = M_PI / (4.0 * theta) - 0.5;
    // The 1e-9 nudge absorbs representation error at the exact-solution
    // boundary (n = 2, where the argument is the integer 1).
    return rounding == IterationRounding::PaperFloor
               ? static_cast<long long>(std::floor(raw + 1e-9))
               : std::llround(raw);
}

double grover_success_probability(int num_qubits, long long iterations) {
    const double theta = std::asin(std::pow(2.0, -0.5 * num_qubits));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) *
                              theta);
    return s * s;
}

Circuit grover_circuit(int num_qubits, std::uint64_t target,
                       long long iterations) {
    check_target(num_qubits, target);
    if (iterations < 0) {
        throw std::invalid_argument("iteration count must be non-negative");
    }
    Circuit circuit(num_qubits);
    circuit.target = target;
    for (long long it = 0; it < iterations; ++it) {
        circuit.append(Gate::oracle_prefix(0));
        for (int q = 0; q < num_qubits; ++q) circuit.append(Gate::h(q));
        for (int q = 0; q < num_qubits; ++q) circuit.append(Gate::x(q));
        if (num_qubits == 1) {
            circuit.append(Gate::z(0));
        } else {
            std::vector<int> controls(num_qubits - 1);
            for (int q = 0; q < num_qubits - 1; ++q) controls[q] = q;
            circuit.append(Gate::mcz(controls, num_qubits - 1));
        }
        for (int q = 0; q < num_qubits; ++q) circuit.append(Gate::x(q));
        for (int q = 0; q < num_qubits; ++q) circuit.append(Gate::h(q));
    }
    return circuit;
}

SearchResult run_search(const SearchSpec& spec) {
    const Circuit circuit = deterministic_search_circuit(spec);
    GateCounts counts;
    const StateVector state =
        simulate(circuit, uniform_state(spec.num_qubits), &counts);
    SearchResult result;
    result.tally = tally_from(counts);
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        if (p > result.probability) {
            result.probability = p;
            result.measured = i;
        }
    }
    return result;
}

PartialSearchResult run_partial_search(const SearchSpec& spec,
                                       int prefix_len) {
    const Circuit circuit = partial_search_circuit(spec, prefix_len);
    GateCounts counts;
    const StateVector state =
        simulate(circuit, uniform_state(spec.num_qubits), &counts);
    PartialSearchResult result;
    result.prefix_len = prefix_len;
    result.prefix_value = spec.target >> (spec.num_qubits - prefix_len);
    const BlockStats stats = block_stats(state, result.prefix_value, prefix_len);
    result.prefix_probability = stats.total;
    result.suffix_min_probability = stats.min_prob;
    result.suffix_max_probability = stats.max_prob;
    result.tally = tally_from(counts);
    return result;
}

PartialSearchResult run_odd_prefix_search(int num_qubits,
                                          std::uint64_t target,
                                          int prefix_len) {
    const Circuit circuit =
        odd_prefix_search_circuit(num_qubits, target, prefix_len);
    const StateVector input = tensor(basis_state(1, 0), uniform_state(num_qubits));
    GateCounts counts;
    const StateVector state = simulate(circuit, input, &counts);
    PartialSearchResult result;
    result.prefix_len = prefix_len;
    result.prefix_value = target >> (num_qubits - prefix_len);
    // The widened prefix is the ancilla bit (resolved to 1) followed by
    // the revealed target bits.
    const std::uint64_t wide_prefix =
        (std::uint64_t{1} << prefix_len) | result.prefix_value;
    const BlockStats stats = block_stats(state, wide_prefix, prefix_len + 1);
    result.prefix_probability = stats.total;
    result.suffix_min_probability = stats.min_prob;
    result.suffix_max_probability = stats.max_prob;
    result.tally = tally_from(counts);
    return result;
}

std::uint64_t pow3(int exponent) {
    if (exponent < 0 || exponent > 40) {
        throw std::invalid_argument("3^k exponent out of range");
    }
    std::uint64_t value = 1;
    for (int i = 0; i < exponent; ++i) value *= 3;
    return value;
}

std::uint64_t call_count_closed_form(int num_qubits) {
    if (num_qubits < 2 || num_qubits % 2 != 0) {
        throw std::invalid_argument("closed form needs even n >= 2");
    }
    return (pow3(num_qubits / 2) - 1) / 2;
}

std::uint64_t paper_call_count_closed_form(int num_qubits) {
    if (num_qubits < 2 || num_qubits % 2 != 0) {
        throw std::invalid_argument("closed form needs even n >= 2");
    }
    return (pow3(num_qubits / 2) - 3) / 2;
}

}  // namespace qsearch
