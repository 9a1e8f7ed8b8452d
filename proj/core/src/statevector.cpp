#include "qsearch/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

void check_qubit_count(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(num_qubits) +
                                    " outside supported range [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
}

void check_qubit_index(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(state.num_qubits()) + " qubits");
    }
}

template <std::size_t N>
bool is_unitary(const std::array<Amplitude, N * N>& u, double tol) {
    // max |(U^dag U - I)_{jk}|
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t k = 0; k < N; ++k) {
            Amplitude acc{0.0, 0.0};
            for (std::size_t r = 0; r < N; ++r) {
                acc += std::conj(u[r * N + j]) * u[r * N + k];
            }
            if (j == k) acc -= 1.0;
            if (std::abs(acc) > tol) return false;
        }
    }
    return true;
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
    amps_.assign(std::uint64_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = Amplitude{1.0, 0.0};
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const Amplitude& a : amps_) acc += std::norm(a);
    return acc;
}

StateVector uniform_state(int num_qubits) {
    check_qubit_count(num_qubits);
    StateVector state(num_qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(state.dim()));
    std::fill(state.amplitudes().begin(), state.amplitudes().end(),
              Amplitude{a, 0.0});
    return state;
}

StateVector basis_state(int num_qubits, std::uint64_t index) {
    check_qubit_count(num_qubits);
    StateVector state(num_qubits);
    if (index >= state.dim()) {
        throw std::out_of_range("basis index " + std::to_string(index) +
                                " out of range for " + std::to_string(num_qubits) +
                                " qubits");
    }
    state[0] = Amplitude{0.0, 0.0};
    state[index] = Amplitude{1.0, 0.0};
    return state;
}

StateVector suffix_uniform_state(int num_qubits, int suffix_len,
                                 std::span<const Amplitude> prefix_coeffs) {
    check_qubit_count(num_qubits);
    if (suffix_len < 0 || suffix_len > num_qubits) {
        throw std::invalid_argument("suffix length out of range");
    }
    const std::uint64_t num_blocks = std::uint64_t{1}
                                     << (num_qubits - suffix_len);
    const std::uint64_t block = std::uint64_t{1} << suffix_len;
    if (prefix_coeffs.size() != num_blocks) {
        throw std::invalid_argument("expected one coefficient per prefix block");
    }
    double norm2 = 0.0;
    for (const Amplitude& c : prefix_coeffs) norm2 += std::norm(c);
    if (norm2 <= 0.0) {
        throw std::invalid_argument("prefix coefficients are all zero");
    }
    const double scale = 1.0 / std::sqrt(norm2 * static_cast<double>(block));
    StateVector state(num_qubits);
    for (std::uint64_t p = 0; p < num_blocks; ++p) {
        const Amplitude a = prefix_coeffs[p] * scale;
        for (std::uint64_t j = 0; j < block; ++j) {
            state[(p << suffix_len) | j] = a;
        }
    }
    return state;
}

void apply_one_qubit(StateVector& state, int qubit, const Mat2& u) {
    check_qubit_index(state, qubit);
    if (!is_unitary<2>(u, kGateTolerance)) {
        throw std::invalid_argument("2x2 matrix is not unitary within 1e-12");
    }
    const int pos = state.num_qubits() - 1 - qubit;
    const std::uint64_t stride = std::uint64_t{1} << pos;
    const std::uint64_t dim = state.dim();
    Amplitude* amps = state.amplitudes().data();
    for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
        for (std::uint64_t i = base; i < base + stride; ++i) {
            const Amplitude a0 = amps[i];
            const Amplitude a1 = amps[i + stride];
            amps[i] = u[0] * a0 + u[1] * a1;
            amps[i + stride] = u[2] * a0 + u[3] * a1;
        }
    }
}

void apply_two_qubit(StateVector& state, int q1, int q2, const Mat4& u) {
    check_qubit_index(state, q1);
    check_qubit_index(state, q2);
    if (q1 == q2) {
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    if (!is_unitary<4>(u, kGateTolerance)) {
        throw std::invalid_argument("4x4 matrix is not unitary within 1e-12");
    }
    const int n = state.num_qubits();
    const int p1 = n - 1 - q1;
    const int p2 = n - 1 - q2;
    const std::uint64_t m1 = std::uint64_t{1} << p1;
    const std::uint64_t m2 = std::uint64_t{1} << p2;
    const int pl = std::min(p1, p2);
    const int ph = std::max(p1, p2);
    const std::uint64_t low_mask = (std::uint64_t{1} << pl) - 1;
    const std::uint64_t mid_mask = (std::uint64_t{1} << (ph - 1 - pl)) - 1;
    const std::uint64_t quarter = state.dim() >> 2;
    Amplitude* amps = state.amplitudes().data();
    for (std::uint64_t k = 0; k < quarter; ++k) {
        const std::uint64_t low = k & low_mask;
        const std::uint64_t mid = (k >> pl) & mid_mask;
        const std::uint64_t high = k >> (ph - 1);
        const std::uint64_t i00 = (high << (ph + 1)) | (mid << (pl + 1)) | low;
        const std::uint64_t i01 = i00 | m2;
        const std::uint64_t i10 = i00 | m1;
        const std::uint64_t i11 = i00 | m1 | m2;
        const Amplitude a00 = amps[i00];
        const Amplitude a01 = amps[i01];
        const Amplitude a10 = amps[i10];
        const Amplitude a11 = amps[i11];
        amps[i00] = u[0] * a00 + u[1] * a01 + u[2] * a10 + u[3] * a11;
        amps[i01] = u[4] * a00 + u[5] * a01 + u[6] * a10 + u[7] * a11;
        amps[i10] = u[8] * a00 + u[9] * a01 + u[10] * a10 + u[11] * a11;
        amps[i11] = u[12] * a00 + u[13] * a01 + u[14] * a10 + u[15] * a11;
    }
}

void apply_prefix_phase_flip(StateVector& state, std::uint64_t target,
                             int suffix_len) {
    const int n = state.num_qubits();
    if (suffix_len < 0 || suffix_len > n) {
        throw std::invalid_argument("suffix length out of range");
    }
    if (target >= state.dim()) {
        throw std::out_of_range("target index out of range");
    }
    // Exactly the states i with (i >> suffix_len) == (target >> suffix_len)
    // match the prefix; they form one contiguous block.
    const std::uint64_t start = (target >> suffix_len) << suffix_len;
    const std::uint64_t block = std::uint64_t{1} << suffix_len;
    Amplitude* amps = state.amplitudes().data();
    for (std::uint64_t i = start; i < start + block; ++i) {
        amps[i] = -amps[i];
    }
}

Amplitude overlap(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("overlap of states with different widths");
    }
    Amplitude acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

double probability(const StateVector& state, std::uint64_t index) {
    if (index >= state.dim()) {
        throw std::out_of_range("basis index out of range");
    }
    return std::norm(state[index]);
}

double assert_normalized(const StateVector& state) {
    const double norm = std::sqrt(state.norm_squared());
    if (std::abs(norm - 1.0) > kStateTolerance) {
        throw std::runtime_error("state norm " + std::to_string(norm) +
                                 " deviates from 1 by more than 1e-9");
    }
    return norm;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const int n = a.num_qubits() + b.num_qubits();
    check_qubit_count(n);
    StateVector out(n);
    const std::uint64_t dim_b = b.dim();
    for (std::uint64_t ia = 0; ia < a.dim(); ++ia) {
        for (std::uint64_t ib = 0; ib < dim_b; ++ib) {
            out[(ia << b.num_qubits()) | ib] = a[ia] * b[ib];
        }
    }
    return out;
}

StateVector reorder_qubits(const StateVector& state,
                           std::span<const int> source_of) {
    const int n = state.num_qubits();
    if (static_cast<int>(source_of.size()) != n) {
        throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<bool> seen(n, false);
    for (int q : source_of) {
        if (q < 0 || q >= n || seen[q]) {
            throw std::invalid_argument("source_of is not a permutation");
        }
        seen[q] = true;
    }
    StateVector out(n);
    for (std::uint64_t j = 0; j < out.dim(); ++j) {
        std::uint64_t i = 0;
        for (int k = 0; k < n; ++k) {
            const std::uint64_t bit = (j >> (n - 1 - k)) & 1u;
            i |= bit << (n - 1 - source_of[k]);
        }
        out[j] = state[i];
    }
    return out;
}

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

const Mat2& mat_identity2() {
    static const Mat2 m = {Amplitude{1, 0}, {0, 0}, {0, 0}, {1, 0}};
    return m;
}

const Mat2& mat_hadamard() {
    static const Mat2 m = {Amplitude{kInvSqrt2, 0},
                           {kInvSqrt2, 0},
                           {kInvSqrt2, 0},
                           {-kInvSqrt2, 0}};
    return m;
}

const Mat2& mat_pauli_x() {
    static const Mat2 m = {Amplitude{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    return m;
}

const Mat2& mat_pauli_z() {
    static const Mat2 m = {Amplitude{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
    return m;
}

const Mat2& mat_t() {
    static const Mat2 m = {Amplitude{1, 0},
                           {0, 0},
                           {0, 0},
                           {kInvSqrt2, kInvSqrt2}};
    return m;
}

const Mat2& mat_t_dagger() {
    static const Mat2 m = {Amplitude{1, 0},
                           {0, 0},
                           {0, 0},
                           {kInvSqrt2, -kInvSqrt2}};
    return m;
}

const Mat4& mat_cz() {
    static const Mat4 m = [] {
        Mat4 v{};
        v[0] = v[5] = v[10] = Amplitude{1, 0};
        v[15] = Amplitude{-1, 0};
        return v;
    }();
    return m;
}

const Mat4& mat_swap() {
    static const Mat4 m = [] {
        Mat4 v{};
        v[0] = v[6] = v[9] = v[15] = Amplitude{1, 0};
        return v;
    }();
    return m;
}

const Mat4& mat_d2() {
    static const Mat4 m = [] {
        Mat4 v{};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                v[r * 4 + c] = Amplitude{(r == c ? 1.0 : 0.0) - 0.5, 0.0};
            }
        }
        return v;
    }();
    return m;
}

}  // namespace qsearch
