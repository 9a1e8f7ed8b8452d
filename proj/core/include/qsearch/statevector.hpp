#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qsearch {

using Amplitude = std::complex<double>;
using Mat2 = std::array<Amplitude, 4>;   // row-major 2x2
using Mat4 = std::array<Amplitude, 16>;  // row-major 4x4

/// Largest register the dense simulator accepts (2^24 amplitudes, 256 MiB).
inline constexpr int kMaxQubits = 24;

/// Per-gate unitarity / norm-drift tolerance.
inline constexpr double kGateTolerance = 1e-12;
/// End-to-end state tolerance (normalisation, clean-ancilla checks, ...).
inline constexpr double kStateTolerance = 1e-9;

// Bit-ordering convention, binding for the whole library:
// basis index i is read big-endian and qubit q holds bit q of i counted
// from the MOST significant end. "The first two bits" of an index are
// qubits 0 and 1, and for an n-qubit register the bit of qubit q in
// index i is (i >> (n - 1 - q)) & 1.
class StateVector {
  public:
    /// Constructs |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return amps_.size(); }

    Amplitude& operator[](std::uint64_t i) { return amps_[i]; }
    const Amplitude& operator[](std::uint64_t i) const { return amps_[i]; }

    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }

    /// Squared L2 norm of the vector.
    double norm_squared() const;

  private:
    int num_qubits_;
    std::vector<Amplitude> amps_;
};

/// Equal superposition over all 2^n basis states; every amplitude is the
/// real positive value 1/sqrt(2^n).
StateVector uniform_state(int num_qubits);

/// Computational basis state |index>.
StateVector basis_state(int num_qubits, std::uint64_t index);

/// State that is uniform inside every block of basis states sharing a
/// prefix of n - suffix_len bits; prefix_coeffs supplies one coefficient
/// per block (normalised internally). This is the invariant subspace of
/// the recursive oracle construction.
StateVector suffix_uniform_state(int num_qubits, int suffix_len,
                                 std::span<const Amplitude> prefix_coeffs);

/// Applies a 2x2 unitary to one qubit, in place over strided index pairs.
/// Throws std::invalid_argument if `u` is not unitary within 1e-12.
void apply_one_qubit(StateVector& state, int qubit, const Mat2& u);

/// Applies a 4x4 unitary to the ordered qubit pair (q1, q2); row/column
/// index is the two-bit word (bit of q1, bit of q2).
void apply_two_qubit(StateVector& state, int q1, int q2, const Mat4& u);

/// Negates the amplitude of every basis state whose first
/// n - suffix_len bits match those of `target`; all other amplitudes are
/// untouched. suffix_len == n flips the global sign, suffix_len == 0
/// flips only |target>. This is the native (non-circuit) prefix oracle.
void apply_prefix_phase_flip(StateVector& state, std::uint64_t target,
                             int suffix_len);

/// Inner product <a|b>.
Amplitude overlap(const StateVector& a, const StateVector& b);

/// |amps[index]|^2.
double probability(const StateVector& state, std::uint64_t index);

/// Returns the L2 norm; throws std::runtime_error when it differs from 1
/// by more than 1e-9.
double assert_normalized(const StateVector& state);

/// Kronecker product; `a` supplies the most significant qubits.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Relabels qubits: result qubit k carries what qubit source_of[k]
/// carried in the input. source_of must be a permutation of [0, n).
StateVector reorder_qubits(const StateVector& state,
                           std::span<const int> source_of);

inline double bit_of(std::uint64_t index, int num_qubits, int qubit) {
    return static_cast<double>((index >> (num_qubits - 1 - qubit)) & 1u);
}

// Fixed gate matrices used across the library.
const Mat2& mat_identity2();
const Mat2& mat_hadamard();
const Mat2& mat_pauli_x();
const Mat2& mat_pauli_z();
const Mat2& mat_t();
const Mat2& mat_t_dagger();
const Mat4& mat_cz();
const Mat4& mat_swap();
/// I - 2|s2><s2| with |s2> the uniform two-qubit state; the local
/// diffusion operator the recursive search is built from.
const Mat4& mat_d2();

}  // namespace qsearch
