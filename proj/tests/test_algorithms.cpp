#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qsim/algorithms.hpp"

using namespace qsim;

namespace {

// Random promise-satisfying Deutsch-Jozsa oracle as a dense XOR permutation.
oracle_spec random_dj_oracle(std::size_t n, bool balanced, std::mt19937_64& gen) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::size_t> f(dim, 0);
    if (balanced) {
        std::vector<std::size_t> order(dim);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = dim - 1; i > 0; --i) std::swap(order[i], order[gen() % (i + 1)]);
        for (std::size_t i = 0; i < dim / 2; ++i) f[order[i]] = 1;
    } else if (gen() & 1) {
        f.assign(dim, 1);
    }
    std::vector<std::size_t> image(dim * 2);
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < 2; ++y) image[x * 2 + y] = x * 2 + (y ^ f[x]);
    }
    square_unitary u = square_unitary::from_permutation(image);
    return {"random_dj", n, 1,
            [u = std::move(u)](circuit& c, const std::vector<wire_id>& top,
                               const std::vector<wire_id>& bottom) {
                std::vector<wire_id> wires = top;
                wires.push_back(bottom[0]);
                c.custom_unitary(u, wires);
            }};
}

double closed_form_grover(std::size_t n, std::size_t k) {
    const double theta = std::asin(1.0 / std::sqrt(std::ldexp(1.0, static_cast<int>(n))));
    const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
    return s * s;
}

std::int64_t brute_force_order(std::int64_t a, std::int64_t n) {
    for (std::int64_t r = 1; r < n; ++r) {
        if (modpow(a, r, n) == 1) return r;
    }
    return 0;
}

}  // namespace

TEST_CASE("deutsch classifies all four oracles deterministically") {
    const struct {
        oracle_spec oracle;
        classifier_verdict expected;
    } cases[] = {
        {deutsch_constant(), classifier_verdict::constant},
        {deutsch_balanced_identity(), classifier_verdict::balanced},
        {deutsch_balanced_not(), classifier_verdict::balanced},
        {deutsch_constant_one(), classifier_verdict::constant},
    };
    for (const auto& [oracle, expected] : cases) {
        REQUIRE(deutsch(oracle) == expected);
        // the verdict bit is a point mass
        const outcome_distribution dist = exact_distribution(build_deutsch_circuit(oracle));
        const std::string key = expected == classifier_verdict::balanced ? "1" : "0";
        REQUIRE(probability_of(dist, key) == Catch::Approx(1.0).margin(1e-12));
    }
    REQUIRE_THROWS_AS(deutsch(dj_parity(2)), std::invalid_argument);
}

TEST_CASE("deutsch verdict agrees with sampling") {
    rng_state rng(1);
    REQUIRE(run(build_deutsch_circuit(deutsch_balanced_identity()), rng).bits == "1");
    REQUIRE(run(build_deutsch_circuit(deutsch_constant()), rng).bits == "0");
}

TEST_CASE("deutsch-jozsa classifies the shipped oracles for n = 1..8") {
    for (std::size_t n = 1; n <= 8; ++n) {
        REQUIRE(deutsch_jozsa(dj_constant(n)) == classifier_verdict::constant);
        REQUIRE(deutsch_jozsa(dj_parity(n)) == classifier_verdict::balanced);
    }
}

TEST_CASE("a copy-one-bit oracle is balanced with vanishing all-zero mass") {
    const oracle_spec copy_bit{"copy_bit", 3, 1,
                               [](circuit& c, const std::vector<wire_id>& top,
                                  const std::vector<wire_id>& bottom) {
                                   c.gate(gate_kind::x, bottom[0], {{top[0], true}});
                               }};
    REQUIRE(deutsch_jozsa(copy_bit) == classifier_verdict::balanced);
    const outcome_distribution dist = exact_distribution(build_deutsch_jozsa_circuit(copy_bit));
    REQUIRE(probability_of(dist, "000") == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("deutsch-jozsa verdicts are point masses for random promise oracles") {
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 24; ++rep) {
        const std::size_t n = 1 + gen() % 5;
        const bool balanced = gen() & 1;
        const oracle_spec o = random_dj_oracle(n, balanced, gen);
        const outcome_distribution dist = exact_distribution(build_deutsch_jozsa_circuit(o));
        const double zero_mass = probability_of(dist, std::string(n, '0'));
        if (balanced) {
            REQUIRE(zero_mass == Catch::Approx(0.0).margin(1e-12));
            REQUIRE(deutsch_jozsa(o) == classifier_verdict::balanced);
        } else {
            REQUIRE(zero_mass == Catch::Approx(1.0).margin(1e-12));
            REQUIRE(deutsch_jozsa(o) == classifier_verdict::constant);
        }
    }
}

TEST_CASE("simon sampling distribution for the table1 oracle") {
    const outcome_distribution dist = exact_distribution(build_simon_circuit(simon_table1()));
    REQUIRE(dist.size() == 2);
    REQUIRE(probability_of(dist, "00") == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(probability_of(dist, "11") == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("one-to-one f gives a uniform top register") {
    rng_state rng(12);
    const oracle_spec o = simon_from_hidden_string("00", rng);
    const outcome_distribution dist = exact_distribution(build_simon_circuit(o));
    REQUIRE(dist.size() == 4);
    for (const auto& [bits, p] : dist) {
        REQUIRE(p == Catch::Approx(0.25).margin(1e-12));
    }
}

TEST_CASE("n=1 constant f always samples y = 0") {
    rng_state gen_rng(4);
    const oracle_spec o = simon_from_hidden_string("1", gen_rng);
    const outcome_distribution dist = exact_distribution(build_simon_circuit(o));
    REQUIRE(probability_of(dist, "0") == Catch::Approx(1.0).margin(1e-12));
    rng_state rng(2);
    for (int i = 0; i < 16; ++i) REQUIRE(simon_sample(o, rng) == "0");
}

TEST_CASE("every simon sample is orthogonal to the hidden string") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        rng_state rng(seed);
        const std::size_t n = 1 + rng.next_below(5);
        const std::string s = index_to_bits(rng.next_below(std::uint64_t{1} << n), n);
        const oracle_spec o = simon_from_hidden_string(s, rng);
        const std::string y = simon_sample(o, rng);
        const std::uint64_t overlap = bits_to_index(y) & bits_to_index(s);
        REQUIRE(std::popcount(overlap) % 2 == 0);
    }
}

TEST_CASE("simon_recover finds the worked hidden string") {
    rng_state rng(1);
    const simon_result result = simon_recover(simon_table1(), rng);
    REQUIRE(result.hidden_string == "11");
    REQUIRE(result.rounds_used <= 20);
}

TEST_CASE("simon_recover on a generated three-bit instance") {
    rng_state rng(6);
    const oracle_spec o = simon_from_hidden_string("101", rng);
    REQUIRE(simon_recover(o, rng).hidden_string == "101");
}

TEST_CASE("simon_recover reports all-zero for a one-to-one oracle") {
    const oracle_spec identity_f{"identity_f", 2, 2,
                                 [](circuit& c, const std::vector<wire_id>& top,
                                    const std::vector<wire_id>& bottom) {
                                     c.gate(gate_kind::x, bottom[0], {{top[0], true}});
                                     c.gate(gate_kind::x, bottom[1], {{top[1], true}});
                                 }};
    rng_state rng(3);
    REQUIRE(simon_recover(identity_f, rng).hidden_string == "00");
}

TEST_CASE("simon_recover exhausts its budget gracefully") {
    rng_state rng(1);
    // with zero rounds allowed there is nothing to conclude from
    REQUIRE_THROWS_AS(simon_recover(simon_table1(), rng, 0), budget_error);
}

TEST_CASE("grover iteration counts") {
    REQUIRE(grover_iterations(2, grover_strategy::paper()) == 2);
    REQUIRE(grover_iterations(3, grover_strategy::paper()) == 2);
    REQUIRE(grover_iterations(4, grover_strategy::paper()) == 4);
    REQUIRE(grover_iterations(2, grover_strategy::optimal()) == 1);
    REQUIRE(grover_iterations(3, grover_strategy::optimal()) == 2);
    REQUIRE(grover_iterations(4, grover_strategy::optimal()) == 3);
    REQUIRE(grover_iterations(5, grover_strategy::explicit_k(6)) == 6);
    REQUIRE_THROWS_AS(grover_iterations(0, grover_strategy::optimal()), std::invalid_argument);
}

TEST_CASE("grover success probability matches the closed form") {
    for (std::size_t n = 1; n <= 5; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (std::size_t k = 0; k <= 6; ++k) {
            // every marked item for the small sizes, a rolling sample above
            std::vector<std::size_t> marks;
            if (n <= 3) {
                for (std::size_t x = 0; x < dim; ++x) marks.push_back(x);
            } else {
                marks = {0, (3 * n + k) % dim, dim - 1};
            }
            for (const std::size_t x0 : marks) {
                const circuit c = build_grover_circuit(grover_marked(n, x0), k);
                const double p = probability_of(exact_distribution(c), index_to_bits(x0, n));
                REQUIRE(p == Catch::Approx(closed_form_grover(n, k)).margin(1e-9));
            }
        }
    }
}

TEST_CASE("the worked grover instances") {
    // n=2, x0=2, one optimal iteration: certainty
    const circuit two = build_grover_circuit(grover_marked(2, 2), 1);
    REQUIRE(probability_of(exact_distribution(two), "10") == Catch::Approx(1.0).margin(1e-12));
    rng_state rng(99);
    for (int i = 0; i < 8; ++i) {
        REQUIRE(grover(grover_marked(2, 2), grover_strategy::optimal(), rng) == "10");
    }

    // n=3, x0=5, two iterations: 121/128
    const circuit five = build_grover_circuit(grover_marked(3, 5), 2);
    REQUIRE(probability_of(exact_distribution(five), "101") ==
            Catch::Approx(121.0 / 128.0).margin(1e-9));

    // the paper's floor(sqrt(2^n)) count over-rotates n=2 back to uniform
    const std::size_t paper_k = grover_iterations(2, grover_strategy::paper());
    const circuit over = build_grover_circuit(grover_marked(2, 2), paper_k);
    REQUIRE(probability_of(exact_distribution(over), "10") ==
            Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("order finding on the worked subroutine distribution") {
    const circuit c = build_shor_circuit(modexp_permutation(7, 15, 3, 4));
    const outcome_distribution dist = exact_distribution(c);
    REQUIRE(dist.size() == 4);
    for (const std::string key : {"000", "010", "100", "110"}) {
        REQUIRE(probability_of(dist, key) == Catch::Approx(0.25).margin(1e-12));
    }
}

TEST_CASE("find_order_quantum recovers the order of 7 mod 15") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        rng_state rng(seed);
        REQUIRE(find_order_quantum(7, 15, 3, rng) == 4);
    }
}

TEST_CASE("find_order_quantum matches brute force for moduli up to 64") {
    const std::vector<std::pair<std::int64_t, std::int64_t>> cases = {
        {15, 2}, {15, 4}, {15, 8}, {15, 13}, {15, 14}, {21, 2},
        {21, 5}, {33, 2}, {35, 4}, {55, 2},  {63, 2}};
    for (const auto& [n_value, a] : cases) {
        rng_state rng(7);
        const std::size_t t = 2 * std::bit_width(static_cast<std::uint64_t>(n_value - 1));
        REQUIRE(find_order_quantum(a, n_value, t, rng) == brute_force_order(a, n_value));
    }
}

TEST_CASE("find_order_quantum errors") {
    rng_state rng(1);
    REQUIRE_THROWS_AS(find_order_quantum(5, 15, 8, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(find_order_quantum(7, 15, 0, rng), std::invalid_argument);
    // a one-wire top register can never resolve an order of 4
    REQUIRE_THROWS_AS(find_order_quantum(7, 15, 1, rng), budget_error);
}

TEST_CASE("shor factors 15 with the forced base 7") {
    rng_state rng(1);
    const shor_result result = shor_factor(15, rng, 7);
    REQUIRE(result.method == shor_method::quantum);
    REQUIRE(result.order == 4);
    REQUIRE((result.factor == 3 || result.factor == 5));
    REQUIRE(15 % result.factor == 0);
    REQUIRE(result.a_used == 7);
    REQUIRE(result.attempts == 1);
}

TEST_CASE("shor factors 21 with the forced base 2") {
    rng_state rng(1);
    const shor_result result = shor_factor(21, rng, 2);
    REQUIRE(result.method == shor_method::quantum);
    REQUIRE(result.order == 6);
    REQUIRE((result.factor == 3 || result.factor == 7));
}

TEST_CASE("base 20 mod 21 is rejected at step 4 and resampled") {
    rng_state rng(1);
    const shor_result result = shor_factor(21, rng, 20);
    REQUIRE(result.attempts >= 2);  // 20 = -1 (mod 21) can never pass step 4
    REQUIRE((result.factor == 3 || result.factor == 7));
    REQUIRE(result.a_used != 20);
}

TEST_CASE("step 1 declares primes and prime powers") {
    rng_state rng(1);
    const shor_result prime = shor_factor(13, rng);
    REQUIRE(prime.method == shor_method::prime);
    REQUIRE(prime.factor == 0);

    const shor_result cube = shor_factor(27, rng);
    REQUIRE(cube.method == shor_method::prime_power);
    REQUIRE(cube.factor == 3);

    const shor_result four = shor_factor(4, rng);
    REQUIRE(four.method == shor_method::prime_power);
    REQUIRE(four.factor == 2);
}

TEST_CASE("step 2 returns a shared factor without quantum work") {
    rng_state rng(1);
    const shor_result result = shor_factor(15, rng, 5);
    REQUIRE(result.method == shor_method::gcd);
    REQUIRE(result.factor == 5);
    REQUIRE(result.order == 0);
}

TEST_CASE("shor input validation") {
    rng_state rng(1);
    REQUIRE_THROWS_AS(shor_factor(3, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(shor_factor(15, rng, 15), std::invalid_argument);
    REQUIRE_THROWS_AS(shor_factor(15, rng, 1), std::invalid_argument);
}

TEST_CASE("random-base shor runs end to end on 15 and 21") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        rng_state rng(seed);
        const shor_result r15 = shor_factor(15, rng);
        REQUIRE(15 % r15.factor == 0);
        REQUIRE(r15.factor > 1);
        REQUIRE(r15.factor < 15);
        if (r15.order != 0) {
            REQUIRE(modpow(r15.a_used, r15.order, 15) == 1);
            REQUIRE(r15.order == brute_force_order(r15.a_used, 15));
        }
        const shor_result r21 = shor_factor(21, rng);
        REQUIRE(21 % r21.factor == 0);
        REQUIRE(r21.factor > 1);
        REQUIRE(r21.factor < 21);
    }
}

TEST_CASE("classical oracle evaluation shape check") {
    REQUIRE_THROWS_AS(classical_oracle_eval(dj_parity(3), "10"), std::invalid_argument);
}
