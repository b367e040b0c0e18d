#include <catch2/catch_amalgamated.hpp>

#include <future>
#include <random>

#include "dense_reference.hpp"
#include "qsim/algorithms.hpp"
#include "qsim/oracles.hpp"
#include "qsim/sim.hpp"

using namespace qsim;

namespace {

circuit hadamard_pair() {
    circuit c;
    const wire_id a = c.qinit(false);
    const wire_id b = c.qinit(false);
    c.gate(gate_kind::h, a);
    c.gate(gate_kind::h, b);
    c.measure({a, b});
    c.set_output({a, b});
    return c;
}

}  // namespace

TEST_CASE("rng_state is reproducible and uniform-ish") {
    rng_state a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double x = a.next_unit();
        REQUIRE(x == b.next_unit());
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
    }
    rng_state c(42);
    for (int i = 0; i < 100; ++i) {
        REQUIRE(c.next_below(7) < 7);
    }
}

TEST_CASE("a prepared |1> measures 1 for every seed") {
    circuit c;
    const wire_id w = c.qinit(true);
    c.measure({w});
    c.set_output({w});
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        rng_state rng(seed);
        REQUIRE(run(c, rng).bits == "1");
    }
}

TEST_CASE("uniform superposition measures each string with probability 1/4") {
    const outcome_distribution dist = exact_distribution(hadamard_pair());
    REQUIRE(dist.size() == 4);
    for (const std::string key : {"00", "01", "10", "11"}) {
        REQUIRE(probability_of(dist, key) == Catch::Approx(0.25).margin(1e-12));
    }
}

TEST_CASE("final_state on single Hadamards") {
    circuit plus;
    plus.gate(gate_kind::h, plus.qinit(false));
    const state_vector sp = final_state(plus);
    REQUIRE(std::abs(sp[0] - cplx{inv_sqrt2, 0}) < 1e-15);
    REQUIRE(std::abs(sp[1] - cplx{inv_sqrt2, 0}) < 1e-15);

    circuit minus;
    minus.gate(gate_kind::h, minus.qinit(true));
    const state_vector sm = final_state(minus);
    REQUIRE(std::abs(sm[0] - cplx{inv_sqrt2, 0}) < 1e-15);
    REQUIRE(std::abs(sm[1] - cplx{-inv_sqrt2, 0}) < 1e-15);
}

TEST_CASE("five Hadamards spread |00000> evenly, cross-checked densely") {
    circuit c;
    for (int i = 0; i < 5; ++i) c.gate(gate_kind::h, c.qinit(false));
    const state_vector s = final_state(c);
    const double amp = 1.0 / std::sqrt(32.0);
    for (std::size_t i = 0; i < 32; ++i) {
        REQUIRE(std::abs(s[i] - cplx{amp, 0}) < 1e-13);
    }
    const auto dense = dense_ref::apply(dense_ref::circuit_matrix(c), dense_ref::init_vector(c));
    REQUIRE(dense_ref::max_abs_diff(dense, s) < 1e-13);
}

TEST_CASE("five Hadamards on |11111> carry parity signs") {
    circuit c;
    for (int i = 0; i < 5; ++i) c.gate(gate_kind::h, c.qinit(true));
    const state_vector s = final_state(c);
    const double amp = 1.0 / std::sqrt(32.0);
    for (std::size_t i = 0; i < 32; ++i) {
        const double expected = std::popcount(i) % 2 ? -amp : amp;
        REQUIRE(std::abs(s[i] - cplx{expected, 0}) < 1e-13);
    }
    const auto dense = dense_ref::apply(dense_ref::circuit_matrix(c), dense_ref::init_vector(c));
    REQUIRE(dense_ref::max_abs_diff(dense, s) < 1e-13);
}

TEST_CASE("final_state rejects circuits with measurement") {
    circuit c;
    const wire_id w = c.qinit(false);
    c.measure({w});
    c.set_output({w});
    REQUIRE_THROWS_AS(final_state(c), std::logic_error);
}

TEST_CASE("mid-circuit measurement agrees with the deferred distribution") {
    circuit c;
    const wire_id a = c.qinit(false);
    const wire_id b = c.qinit(false);
    c.gate(gate_kind::h, a);
    c.measure({a});
    c.gate(gate_kind::h, b);  // acts after a is already classical
    c.measure({b});
    c.set_output({a, b});

    const outcome_distribution dist = exact_distribution(c);
    for (const std::string key : {"00", "01", "10", "11"}) {
        REQUIRE(probability_of(dist, key) == Catch::Approx(0.25).margin(1e-12));
    }

    rng_state rng(5);
    std::map<std::string, int> counts;
    for (int i = 0; i < 4000; ++i) counts[run(c, rng).bits] += 1;
    for (const auto& [bits, count] : counts) {
        REQUIRE(probability_of(dist, bits) > 0.0);
        // 5 sigma on a fair-coin pair
        REQUIRE(std::abs(count / 4000.0 - 0.25) < 5.0 * std::sqrt(0.25 * 0.75 / 4000.0));
    }
}

TEST_CASE("every sampled outcome lies in the support of the exact distribution") {
    const circuit c = build_shor_circuit(modexp_permutation(7, 15, 3, 4));
    const outcome_distribution dist = exact_distribution(c);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        rng_state rng(seed);
        REQUIRE(probability_of(dist, run(c, rng).bits) > 0.0);
    }
}

TEST_CASE("identical seeds give identical records, also across threads") {
    const circuit c = build_grover_circuit(grover_marked(3, 5), 1);
    rng_state r1(9), r2(9);
    const std::string first = run(c, r1).bits;
    REQUIRE(first == run(c, r2).bits);

    auto job = [&c]() {
        rng_state rng(9);
        return run(c, rng).bits;
    };
    auto f1 = std::async(std::launch::async, job);
    auto f2 = std::async(std::launch::async, job);
    REQUIRE(f1.get() == first);
    REQUIRE(f2.get() == first);
}

TEST_CASE("relabeling output_order permutes distribution keys identically") {
    circuit c;
    const wire_id a = c.qinit(false);
    const wire_id b = c.qinit(false);
    c.gate(gate_kind::h, a);
    c.gate(gate_kind::x, b, {{a, true}});
    c.measure({a, b});
    c.set_output({a, b});

    const circuit swapped = circuit::from_parts(c.wire_count(), {c.ops().begin(), c.ops().end()},
                                                {b, a});
    const outcome_distribution fwd = exact_distribution(c);
    const outcome_distribution rev = exact_distribution(swapped);
    REQUIRE(fwd.size() == rev.size());
    for (const auto& [bits, p] : fwd) {
        const std::string perm{bits[1], bits[0]};
        REQUIRE(probability_of(rev, perm) == Catch::Approx(p).margin(1e-15));
    }
}

TEST_CASE("empty circuit yields the empty outcome") {
    const circuit c;
    REQUIRE(exact_distribution(c) == outcome_distribution{{"", 1.0}});
    rng_state rng(1);
    REQUIRE(run(c, rng).bits.empty());
}

TEST_CASE("simulation refuses circuits above the wire cap") {
    circuit c;
    for (int i = 0; i < 23; ++i) c.qinit(false);
    REQUIRE_THROWS_AS(exact_distribution(c), std::length_error);
    rng_state rng(1);
    REQUIRE_THROWS_AS(run(c, rng), std::length_error);
}

TEST_CASE("bit string conversions") {
    REQUIRE(bits_to_index("0110") == 6);
    REQUIRE(bits_to_index("") == 0);
    REQUIRE(index_to_bits(6, 4) == "0110");
    REQUIRE(index_to_bits(0, 0) == "");
    REQUIRE_THROWS_AS(bits_to_index("01x"), std::invalid_argument);
}
