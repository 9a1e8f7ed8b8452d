#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracle_util.hpp"
#include "qsearch/algorithms.hpp"

using namespace qsearch;

namespace {

std::uint64_t count_kind(const Circuit& c, GateKind kind) {
    std::uint64_t n = 0;
    for (const Gate& g : c.gates) {
        if (g.kind == kind) ++n;
    }
    return n;
}

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("d2 subcircuit is the local reflection") {
    const Circuit d2 = d2_subcircuit(2, 0, 1);
    CHECK(two_qubit_count(d2) == 1);

    // operator columns against the dense matrix
    const oracle::Mat want = oracle::d2_matrix();
    for (std::uint64_t col = 0; col < 4; ++col) {
        const StateVector out = simulate(d2, basis_state(2, col));
        for (std::uint64_t row = 0; row < 4; ++row) {
            CHECK(std::abs(out[row] - want[row][col]) < 1e-14);
        }
    }

    // |s2> is the -1 eigenvector
    const StateVector reflected = simulate(d2, uniform_state(2));
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(reflected[i].real() == doctest::Approx(-0.5).epsilon(1e-14));
    }

    // post-oracle block state collapses onto the marked pair state
    StateVector block(2);
    block[0] = block[1] = block[2] = Amplitude{0.5, 0.0};
    block[3] = Amplitude{-0.5, 0.0};
    const StateVector collapsed = simulate(d2, block);
    CHECK(std::abs(collapsed[3]) == doctest::Approx(1.0).epsilon(1e-14));

    // reflection squared is the identity
    const StateVector in = oracle::random_state(2, 12);
    const StateVector back = simulate(d2, simulate(d2, in));
    CHECK(std::abs(overlap(in, back) - Amplitude{1, 0}) < 1e-12);

    CHECK_THROWS_AS(d2_subcircuit(2, 1, 1), std::invalid_argument);
}

TEST_CASE("oracle expansion structure") {
    const Circuit base = expand_oracle(4, 0, 13);
    CHECK(base.gates.size() == 1);
    CHECK(base.gates[0].kind == GateKind::OraclePrefix);

    // n=6, m=4: 3^2 base oracles and 3^2 - 1 diffuser blocks
    const Circuit big = expand_oracle(6, 4, 0);
    CHECK(count_kind(big, GateKind::OraclePrefix) == 9);
    CHECK(count_kind(big, GateKind::CZ) == 8);

    CHECK_THROWS_AS(expand_oracle(4, 1, 13), std::invalid_argument);
    CHECK_THROWS_AS(expand_oracle(4, 4, 13), std::invalid_argument);
}

TEST_CASE("expanded oracle reproduces the prefix flip on uniform input") {
    // n=4, m=2, x=13 negates exactly indices 12..15
    const StateVector out = simulate(expand_oracle(4, 2, 13), uniform_state(4));
    oracle::Vec reference = oracle::to_vec(uniform_state(4));
    oracle::flip_prefix_reference(reference, 4, 13, 2);
    CHECK(oracle::max_abs_diff(oracle::to_vec(out), reference) < 1e-12);
}

TEST_CASE("expanded oracle equals the ideal on suffix-uniform states") {
    std::mt19937_64 rng(314159);
    for (int n = 2; n <= 8; ++n) {
        for (int m = 0; m + 2 <= n; m += 2) {
            for (int rep = 0; rep < 4; ++rep) {
                const std::uint64_t x = rng() & ((std::uint64_t{1} << n) - 1);
                const StateVector in = oracle::random_suffix_uniform(n, m, rng());
                StateVector ideal = in;
                apply_prefix_phase_flip(ideal, x, m);
                const StateVector constructed =
                    simulate(expand_oracle(n, m, x), in);
                // phase-exact: the overlap itself must be 1, not just its
                // magnitude
                CHECK(std::abs(overlap(ideal, constructed) - Amplitude{1, 0}) <
                      1e-9);
            }
        }
    }
}

TEST_CASE("expanded oracle is not the ideal operator on the full space") {
    // outside the suffix-uniform subspace the construction deviates; this
    // pins the boundary of the equivalence claim
    const StateVector in = oracle::random_state(4, 2718);
    StateVector ideal = in;
    apply_prefix_phase_flip(ideal, 13, 2);
    const StateVector constructed = simulate(expand_oracle(4, 2, 13), in);
    CHECK(std::abs(overlap(ideal, constructed) - Amplitude{1, 0}) > 1e-3);
}

TEST_CASE("full search circuit layout") {
    const Circuit tiny = deterministic_search_circuit({2, 1});
    CHECK(tiny.gates.size() == 10);  // one oracle + one diffuser block
    CHECK(tiny.gates[0].kind == GateKind::OraclePrefix);

    CHECK_THROWS_AS(deterministic_search_circuit({5, 1}), std::invalid_argument);
    CHECK_THROWS_AS(deterministic_search_circuit({4, 16}), std::out_of_range);
}

TEST_CASE("search is deterministic for every target at small n") {
    for (int n = 2; n <= 8; n += 2) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const SearchResult r = run_search({n, x});
            CHECK(r.measured == x);
            CHECK(r.probability >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("search lands on the exact basis state") {
    const StateVector out =
        simulate(deterministic_search_circuit({4, 13}), uniform_state(4));
    CHECK(std::abs(overlap(basis_state(4, 13), out) - Amplitude{1, 0}) < 1e-9);
}

TEST_CASE("instrumented tallies match the closed form") {
    const SearchResult tiny = run_search({2, 1});
    CHECK(tiny.tally.u0_calls == 1);
    CHECK(tiny.tally.d2_calls == 1);

    const SearchResult mid = run_search({4, 13});
    CHECK(mid.tally.u0_calls == 4);
    CHECK(mid.tally.d2_calls == 4);

    const SearchResult big = run_search({8, 200});
    CHECK(big.measured == 200);
    CHECK(big.tally.u0_calls == 40);
    CHECK(big.tally.d2_calls == 40);
}

TEST_CASE("closed forms") {
    CHECK(pow3(0) == 1);
    CHECK(pow3(9) == 19683);
    const std::uint64_t ours[] = {1, 4, 13, 40, 121, 364, 1093, 3280};
    const std::uint64_t alt[] = {0, 3, 12, 39, 120, 363, 1092, 3279};
    for (int i = 0; i < 8; ++i) {
        const int n = 2 * (i + 1);
        CHECK(call_count_closed_form(n) == ours[i]);
        CHECK(paper_call_count_closed_form(n) == alt[i]);
        CHECK(call_count_closed_form(n) == paper_call_count_closed_form(n) + 1);
    }
    CHECK_THROWS_AS(call_count_closed_form(3), std::invalid_argument);
}

TEST_CASE("partial search reveals the prefix and keeps the suffix flat") {
    // k = n degenerates to the full search
    const Circuit full = deterministic_search_circuit({4, 9});
    const Circuit partial = partial_search_circuit({4, 9}, 4);
    CHECK(dump(full) == dump(partial));

    const PartialSearchResult r = run_partial_search({6, 45}, 2);
    CHECK(r.prefix_value == 2);  // "10"
    CHECK(r.prefix_probability == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.suffix_uniformity() < 1e-9);
    CHECK(r.suffix_max_probability ==
          doctest::Approx(1.0 / 16.0).epsilon(1e-9));

    const PartialSearchResult q = run_partial_search({4, 7}, 2);
    CHECK(q.prefix_value == 1);  // "01"
    CHECK(q.prefix_probability == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(q.suffix_max_probability == doctest::Approx(0.25).epsilon(1e-9));

    CHECK_THROWS_AS(run_partial_search({6, 45}, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_partial_search({6, 45}, 3), std::invalid_argument);
}

TEST_CASE("stage-wise collapse of the prefix") {
    for (int k = 2; k <= 6; k += 2) {
        const PartialSearchResult r = run_partial_search({6, 37}, k);
        CHECK(r.prefix_probability == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("odd prefixes via the ancilla-conditioned oracle") {
    // n=3, x=5 (=101): one widened stage resolves (ancilla, x0) to |11>
    const PartialSearchResult r1 = run_odd_prefix_search(3, 5, 1);
    CHECK(r1.prefix_value == 1);
    CHECK(r1.prefix_probability == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r1.suffix_uniformity() < 1e-9);
    CHECK(r1.suffix_max_probability == doctest::Approx(0.25).epsilon(1e-9));

    // n=5, x=19 (=10011): k=3 resolves "100", four uniform suffix states
    const PartialSearchResult r3 = run_odd_prefix_search(5, 19, 3);
    CHECK(r3.prefix_value == 4);
    CHECK(r3.prefix_probability == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r3.suffix_max_probability == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r3.suffix_uniformity() < 1e-9);

    // k = n identifies the target completely on odd registers
    for (std::uint64_t x : {0ull, 9ull, 31ull}) {
        const PartialSearchResult full = run_odd_prefix_search(5, x, 5);
        CHECK(full.prefix_value == x);
        CHECK(full.prefix_probability == doctest::Approx(1.0).epsilon(1e-9));
    }

    CHECK_THROWS_AS(run_odd_prefix_search(3, 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(run_odd_prefix_search(4, 5, 1), std::invalid_argument);
}

TEST_CASE("grover plan against the closed form") {
    const GroverPlan two = grover_plan(2, 3);
    CHECK(two.iterations == 1);
    CHECK(two.theta == doctest::Approx(M_PI / 6.0).epsilon(1e-14));
    CHECK(two.predicted_success == doctest::Approx(1.0).epsilon(1e-12));

    const GroverPlan four = grover_plan(4, 5);
    CHECK(four.iterations == 2);
    // sin(5 asin(1/4)) = 61/64 exactly
    CHECK(four.predicted_success ==
          doctest::Approx(3721.0 / 4096.0).epsilon(1e-12));

    const GroverPlan ten = grover_plan(10, 1);
    CHECK(ten.iterations == 24);
    CHECK(ten.predicted_success ==
          doctest::Approx(0.9984565412944024).epsilon(1e-12));

    // the alternate rounding picks the better t at n=4
    CHECK(grover_plan(4, 5, IterationRounding::Nearest).iterations == 3);
    CHECK(grover_plan(2, 0).predicted_success ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grover circuit matches sin^2((2t+1)theta)") {
    // the exact N=4 special case: one iteration, certainty, every target
    for (std::uint64_t x = 0; x < 4; ++x) {
        const StateVector out =
            simulate(grover_circuit(2, x, 1), uniform_state(2));
        CHECK(probability(out, x) == doctest::Approx(1.0).epsilon(1e-12));
    }

    const StateVector four =
        simulate(grover_circuit(4, 5, 2), uniform_state(4));
    CHECK(probability(four, 5) ==
          doctest::Approx(3721.0 / 4096.0).epsilon(1e-9));

    // overcooking: three iterations beat Eq-style two, four fall back down
    const double p3 =
        probability(simulate(grover_circuit(4, 5, 3), uniform_state(4)), 5);
    const double p4 =
        probability(simulate(grover_circuit(4, 5, 4), uniform_state(4)), 5);
    CHECK(p3 == doctest::Approx(63001.0 / 65536.0).epsilon(1e-9));
    CHECK(p4 < p3);

    // consistency across a range of iteration counts
    for (int n = 1; n <= 6; ++n) {
        const std::uint64_t x = (std::uint64_t{1} << n) - 1;
        const long long t_opt = grover_plan(n, x).iterations;
        StateVector state = uniform_state(n);
        const Circuit step = grover_circuit(n, x, 1);
        for (long long t = 1; t <= 2 * std::max<long long>(t_opt, 1); ++t) {
            state = simulate(step, state);
            CHECK(std::abs(probability(state, x) -
                           grover_success_probability(n, t)) < 1e-9);
        }
    }
}

}  // TEST_SUITE
