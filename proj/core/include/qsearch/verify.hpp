#pragma once

#include <string>
#include <vector>

namespace qsearch {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_passed() const {
        for (const VerifyCheck& c : checks) {
            if (!c.passed) return false;
        }
        return true;
    }
};

/// Runs the library's property suite: search determinism over every
/// target, instrumented call tallies against the closed form, oracle
/// expansion equivalence on suffix-uniform states, partial-search
/// uniformity (both parities), Grover consistency and overcooking,
/// transpiler semantic preservation, diffusion topology invariance, the
/// diffusion cost ratio, crossover anchors, and CSV determinism.
/// max_qubits bounds the simulated register sizes; count-only checks run
/// at their native ranges.
VerifyReport run_verify_suite(int max_qubits, int threads);

}  // namespace qsearch
