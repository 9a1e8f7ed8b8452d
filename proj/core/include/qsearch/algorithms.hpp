#pragma once

#include <cstdint>

#include "qsearch/circuit.hpp"
#include "qsearch/statevector.hpp"

namespace qsearch {

struct SearchSpec {
    int num_qubits = 0;        // must be even for the full search
    std::uint64_t target = 0;  // 0 <= target < 2^n
};

/// Instrumented operator-application counts, filled in while a search
/// circuit is simulated.
struct CallTally {
    std::uint64_t u0_calls = 0;  // base oracle applications
    std::uint64_t d2_calls = 0;  // two-qubit diffuser applications
};

enum class IterationRounding {
    PaperFloor,  // t = floor(pi/(4 theta) - 1/2)
    Nearest,     // t = round(pi/(4 theta) - 1/2); better for some n
};

struct GroverPlan {
    int num_qubits = 0;
    std::uint64_t target = 0;
    long long iterations = 0;
    double theta = 0.0;              // asin(2^{-n/2})
    double predicted_success = 0.0;  // sin^2((2t+1) theta)
};

/// The 2-qubit diffusion operator I - 2|s2><s2| as a gate sequence
/// H,H, X,X, CZ, X,X, H,H on the pair (qa, qb); exactly one two-qubit
/// gate. `width` is the width of the circuit it will compose into.
Circuit d2_subcircuit(int width, int qa, int qb);

/// Circuit realising the prefix oracle U_m on suffix-uniform states via
/// the recursion U_m = U_{m-2} D2 U_{m-2} D2 U_{m-2}, bottoming out at a
/// single base-oracle gate. During the expansion of U_m the diffuser acts
/// on qubits (n-m, n-m+1), the top pair of the free suffix. The flat gate
/// list contains 3^{m/2} base-oracle gates and 3^{m/2} - 1 D2 blocks.
///
/// The construction equals the ideal U_m only on states whose component
/// inside each prefix block lies in the span the recursion preserves --
/// in particular on all suffix-uniform states the search produces -- not
/// as a full-space operator.
Circuit expand_oracle(int num_qubits, int suffix_len, std::uint64_t target);

/// Full deterministic search: stage i applies expand_oracle(n, n-2i-2)
/// followed by D2 on qubits (2i, 2i+1), for i = 0 .. n/2-1 (largest
/// oracle first). Simulated on the uniform state it leaves |target> with
/// probability 1.
Circuit deterministic_search_circuit(const SearchSpec& spec);

/// First prefix_len/2 stages of the full search; prefix_len even.
/// On uniform input the first prefix_len bits collapse to the target's
/// and the suffix stays uniform.
Circuit partial_search_circuit(const SearchSpec& spec, int prefix_len);

/// Odd prefix lengths via one ancilla qubit prepended as the new most
/// significant wire: the circuit starts with H on it and runs the
/// (prefix_len+1)-bit partial search over the widened register, where the
/// base oracle is the ancilla-conditioned exact-match flip. Requires odd
/// num_qubits (the widened register must be even); prefix_len may equal
/// num_qubits, which identifies the target completely.
/// Input convention: |0> on the ancilla tensor the n-qubit data state.
Circuit odd_prefix_search_circuit(int num_qubits, std::uint64_t target,
                                  int prefix_len);

GroverPlan grover_plan(int num_qubits, std::uint64_t target,
                       IterationRounding rounding = IterationRounding::PaperFloor);

/// Iteration count alone; valid for any register width (used by the cost
/// models far beyond what the simulator can hold).
long long grover_iteration_count(
    int num_qubits, IterationRounding rounding = IterationRounding::PaperFloor);

/// sin^2((2t+1) asin(2^{-n/2})): success probability after t iterations.
double grover_success_probability(int num_qubits, long long iterations);

/// t repetitions of [base oracle; global diffuser], the diffuser built as
/// H on all, X on all, MCZ over the full register, X on all, H on all.
Circuit grover_circuit(int num_qubits, std::uint64_t target,
                       long long iterations);

struct SearchResult {
    std::uint64_t measured = 0;  // argmax of the probability vector
    double probability = 0.0;
    CallTally tally;
};

/// Builds and simulates the full search, reading the result out exactly
/// (argmax; no sampling).
SearchResult run_search(const SearchSpec& spec);

struct PartialSearchResult {
    std::uint64_t prefix_value = 0;   // the revealed target bits
    int prefix_len = 0;
    double prefix_probability = 0.0;  // reduced probability of that prefix
    double suffix_max_probability = 0.0;
    double suffix_min_probability = 0.0;
    CallTally tally;

    double suffix_uniformity() const {
        return suffix_max_probability - suffix_min_probability;
    }
};

PartialSearchResult run_partial_search(const SearchSpec& spec, int prefix_len);

/// Ancilla variant; the reported prefix covers the true target bits (the
/// ancilla is verified to resolve to |1> as part of prefix_probability).
PartialSearchResult run_odd_prefix_search(int num_qubits, std::uint64_t target,
                                          int prefix_len);

/// (3^{n/2} - 1)/2: base-oracle calls (and equally D2 applications) of the
/// full search, matching the instrumented counters.
std::uint64_t call_count_closed_form(int num_qubits);

/// (3^{n/2} - 3)/2: the alternate closed form for the same sum that
/// appears in circulation; it undercounts the instrumented total by one
/// at every even n. Reported alongside, never silently substituted.
std::uint64_t paper_call_count_closed_form(int num_qubits);

std::uint64_t pow3(int exponent);

}  // namespace qsearch
