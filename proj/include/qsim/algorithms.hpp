// algorithms.hpp
// The five algorithm drivers: circuit assembly, iteration logic, classical
// post-processing, and result interpretation. Every driver is pure given its
// oracle and seed. The classifier drivers read the exact distribution; their
// outcomes are point masses under the promise.

#pragma once

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/gf2.hpp"
#include "qsim/number_theory.hpp"
#include "qsim/oracles.hpp"
#include "qsim/qft.hpp"
#include "qsim/sim.hpp"

namespace qsim {

// Raised when a retry budget runs out (resample with a new seed or enlarge
// the top register).
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class classifier_verdict { balanced, constant };

inline const char* verdict_name(classifier_verdict v) {
    return v == classifier_verdict::balanced ? "Balanced" : "Constant";
}

struct simon_result {
    std::string hidden_string;
    std::size_t rounds_used = 0;
};

enum class shor_method { prime, prime_power, gcd, quantum };

inline const char* shor_method_name(shor_method m) {
    switch (m) {
        case shor_method::prime: return "prime";
        case shor_method::prime_power: return "prime_power";
        case shor_method::gcd: return "gcd";
        case shor_method::quantum: return "quantum";
    }
    return "?";
}

struct shor_result {
    std::int64_t n_value = 0;
    std::int64_t factor = 0;   // 0 only when n_value is prime
    std::int64_t a_used = 0;   // 0 when no base was needed
    std::int64_t order = 0;    // 0 when no quantum order was needed
    std::size_t attempts = 0;
    shor_method method = shor_method::quantum;
};

// --- circuit assembly -------------------------------------------------------

namespace detail {

inline std::vector<wire_id> init_register(circuit& c, std::size_t count, bool value) {
    std::vector<wire_id> wires;
    wires.reserve(count);
    for (std::size_t i = 0; i < count; ++i) wires.push_back(c.qinit(value));
    return wires;
}

}  // namespace detail

// Top |0>, bottom |1>, Hadamards, oracle, Hadamard on top, measure, keep top.
inline circuit build_deutsch_circuit(const oracle_spec& o) {
    if (o.top_wires != 1 || o.bottom_wires != 1) {
        throw std::invalid_argument("deutsch: oracle must have one top and one bottom wire");
    }
    circuit c;
    const wire_id top = c.qinit(false);
    const wire_id bottom = c.qinit(true);
    c.gate(gate_kind::h, top);
    c.gate(gate_kind::h, bottom);
    o.build(c, {top}, {bottom});
    c.gate(gate_kind::h, top);
    c.measure({top, bottom});
    c.cdiscard({bottom});
    c.set_output({top});
    return c;
}

inline circuit build_deutsch_jozsa_circuit(const oracle_spec& o) {
    if (o.top_wires < 1 || o.bottom_wires != 1) {
        throw std::invalid_argument("deutsch_jozsa: oracle must have shape (n, 1)");
    }
    circuit c;
    const auto top = detail::init_register(c, o.top_wires, false);
    const wire_id bottom = c.qinit(true);
    for (wire_id w : top) c.gate(gate_kind::h, w);
    c.gate(gate_kind::h, bottom);
    o.build(c, top, {bottom});
    for (wire_id w : top) c.gate(gate_kind::h, w);
    auto measured = top;
    measured.push_back(bottom);
    c.measure(measured);
    c.cdiscard({bottom});
    c.set_output(top);
    return c;
}

// Standard preparation: both registers start in |0...0>, Hadamards on the
// top register only. The bottom register is left unmeasured; the exact
// distribution marginalizes over it.
inline circuit build_simon_circuit(const oracle_spec& o) {
    if (o.top_wires < 1 || o.bottom_wires != o.top_wires) {
        throw std::invalid_argument("simon: oracle must have shape (n, n)");
    }
    circuit c;
    const auto top = detail::init_register(c, o.top_wires, false);
    const auto bottom = detail::init_register(c, o.bottom_wires, false);
    for (wire_id w : top) c.gate(gate_kind::h, w);
    o.build(c, top, bottom);
    for (wire_id w : top) c.gate(gate_kind::h, w);
    c.measure(top);
    c.set_output(top);
    return c;
}

// Reflection about the uniform state, 2|psi><psi| - I up to a global phase:
// Hadamard and X layers around a multi-controlled Z, the Z realized as
// H . multi-controlled-X . H on the last top wire.
inline void append_grover_diffusion(circuit& c, const std::vector<wire_id>& top) {
    for (wire_id w : top) c.gate(gate_kind::h, w);
    for (wire_id w : top) c.gate(gate_kind::x, w);
    const wire_id target = top.back();
    std::vector<control_spec> controls;
    for (std::size_t i = 0; i + 1 < top.size(); ++i) controls.push_back({top[i], true});
    c.gate(gate_kind::h, target);
    c.gate(gate_kind::x, target, controls);
    c.gate(gate_kind::h, target);
    for (wire_id w : top) c.gate(gate_kind::x, w);
    for (wire_id w : top) c.gate(gate_kind::h, w);
}

inline circuit build_grover_circuit(const oracle_spec& o, std::size_t iterations) {
    if (o.top_wires < 1 || o.bottom_wires != 1) {
        throw std::invalid_argument("grover: oracle must have shape (n, 1)");
    }
    circuit c;
    const auto top = detail::init_register(c, o.top_wires, false);
    const wire_id bottom = c.qinit(true);
    for (wire_id w : top) c.gate(gate_kind::h, w);
    c.gate(gate_kind::h, bottom);
    for (std::size_t it = 0; it < iterations; ++it) {
        o.build(c, top, {bottom});  // phase inversion via the |-> bottom wire
        append_grover_diffusion(c, top);
    }
    c.gate(gate_kind::h, bottom);
    auto measured = top;
    measured.push_back(bottom);
    c.measure(measured);
    c.cdiscard({bottom});
    c.set_output(top);
    return c;
}

// Top register in uniform superposition, bottom prepared at computational
// value 1 (single X on its least significant wire), oracle, bottom measured
// and discarded, inverse QFT on top, top measured as the result.
inline circuit build_shor_circuit(const oracle_spec& o) {
    if (o.top_wires < 1 || o.bottom_wires < 1) {
        throw std::invalid_argument("shor: oracle must have nonempty registers");
    }
    circuit c;
    const auto top = detail::init_register(c, o.top_wires, false);
    const auto bottom = detail::init_register(c, o.bottom_wires, false);
    for (wire_id w : top) c.gate(gate_kind::h, w);
    c.gate(gate_kind::x, bottom.back());
    o.build(c, top, bottom);
    c.measure(bottom);
    c.cdiscard(bottom);
    append_inverse_qft_big_endian(c, top);
    c.measure(top);
    c.set_output(top);
    return c;
}

// Classical evaluation of an oracle's f at x, by simulation: prepare the top
// register at x, bottom at 0, apply the fragment, read the bottom register.
inline std::string classical_oracle_eval(const oracle_spec& o, const std::string& x_bits) {
    if (x_bits.size() != o.top_wires) {
        throw std::invalid_argument("classical_oracle_eval: input width mismatch");
    }
    circuit c;
    std::vector<wire_id> top;
    for (char ch : x_bits) top.push_back(c.qinit(ch == '1'));
    const auto bottom = detail::init_register(c, o.bottom_wires, false);
    o.build(c, top, bottom);
    c.measure(bottom);
    c.set_output(bottom);
    const outcome_distribution dist = exact_distribution(c);
    // XOR oracles land on a single basis state; take the dominant key.
    std::string best;
    double best_p = -1.0;
    for (const auto& [bits, p] : dist) {
        if (p > best_p) {
            best = bits;
            best_p = p;
        }
    }
    return best;
}

// --- Deutsch and Deutsch-Jozsa ----------------------------------------------

inline classifier_verdict deutsch(const oracle_spec& o) {
    const outcome_distribution dist = exact_distribution(build_deutsch_circuit(o));
    return probability_of(dist, "1") > 0.5 ? classifier_verdict::balanced
                                           : classifier_verdict::constant;
}

inline classifier_verdict deutsch_jozsa(const oracle_spec& o) {
    const outcome_distribution dist = exact_distribution(build_deutsch_jozsa_circuit(o));
    const std::string all_zero(o.top_wires, '0');
    return probability_of(dist, all_zero) > 0.5 ? classifier_verdict::constant
                                                : classifier_verdict::balanced;
}

// --- Simon --------------------------------------------------------------------

// One quantum round; the returned y always satisfies y . s = 0 (mod 2).
inline std::string simon_sample(const oracle_spec& o, rng_state& rng) {
    return run(build_simon_circuit(o), rng).bits;
}

// Samples until the nullspace of the collected rows pins the hidden string:
// rank n means s = 0^n, rank n-1 leaves one nonzero candidate, which is
// accepted once f(0) = f(candidate) confirms the promise.
inline simon_result simon_recover(const oracle_spec& o, rng_state& rng,
                                  std::size_t max_rounds = 20) {
    const std::size_t n = o.top_wires;
    const circuit c = build_simon_circuit(o);
    const std::string f_at_zero = classical_oracle_eval(o, std::string(n, '0'));
    std::vector<std::string> rows;
    for (std::size_t round = 1; round <= max_rounds; ++round) {
        rows.push_back(run(c, rng).bits);
        const std::vector<std::string> basis = gf2_nullspace(rows, n);
        if (basis.empty()) {
            return {std::string(n, '0'), round};
        }
        if (basis.size() == 1 && classical_oracle_eval(o, basis[0]) == f_at_zero) {
            return {basis[0], round};
        }
    }
    throw budget_error("simon_recover: round budget exhausted, retry with a new seed");
}

// --- Grover ---------------------------------------------------------------------

struct grover_strategy {
    enum class kind { paper, optimal, explicit_count };
    kind mode = kind::optimal;
    std::size_t count = 0;

    static grover_strategy paper() { return {kind::paper, 0}; }
    static grover_strategy optimal() { return {kind::optimal, 0}; }
    static grover_strategy explicit_k(std::size_t k) { return {kind::explicit_count, k}; }
};

// paper: floor(sqrt(2^n)) iterations. optimal: nearest integer to
// pi/(4 asin(2^(-n/2))) - 1/2, at least one; overshooting past the optimum
// lowers the success probability again.
inline std::size_t grover_iterations(std::size_t n, const grover_strategy& strategy) {
    if (n < 1) throw std::invalid_argument("grover_iterations: n must be at least 1");
    switch (strategy.mode) {
        case grover_strategy::kind::paper:
            return static_cast<std::size_t>(std::floor(std::sqrt(std::ldexp(1.0, static_cast<int>(n)))));
        case grover_strategy::kind::optimal: {
            const double theta = std::asin(1.0 / std::sqrt(std::ldexp(1.0, static_cast<int>(n))));
            const auto k = std::llround(std::numbers::pi / (4.0 * theta) - 0.5);
            return static_cast<std::size_t>(std::max<long long>(1, k));
        }
        case grover_strategy::kind::explicit_count:
            return strategy.count;
    }
    return 1;
}

inline std::string grover(const oracle_spec& o, const grover_strategy& strategy, rng_state& rng) {
    const std::size_t k = grover_iterations(o.top_wires, strategy);
    return run(build_grover_circuit(o, k), rng).bits;
}

// --- Shor -----------------------------------------------------------------------

// Quantum order finding: samples the phase-estimation circuit, feeds each
// measured y through continued fractions of y/2^t (denominators below N),
// and combines up to four candidate denominators by lcm until some multiple
// of the order is found, which is then reduced to the order itself.
inline std::int64_t find_order_quantum(std::int64_t a, std::int64_t n_value, std::size_t t,
                                       rng_state& rng, std::size_t sample_budget = 32) {
    if (n_value < 2 || a < 2 || std::gcd(a, n_value) != 1) {
        throw std::invalid_argument("find_order_quantum: base must be coprime to the modulus");
    }
    if (t < 1) throw std::invalid_argument("find_order_quantum: empty top register");
    const std::size_t b = std::bit_width(static_cast<std::uint64_t>(n_value - 1));
    const circuit c = build_shor_circuit(modexp_permutation(a, n_value, t, b));
    const std::int64_t top_dim = std::int64_t{1} << t;

    std::vector<std::int64_t> candidates;
    for (std::size_t sample = 0; sample < sample_budget; ++sample) {
        const std::int64_t y =
            static_cast<std::int64_t>(bits_to_index(run(c, rng).bits));
        if (y == 0) continue;  // no information, resample
        const auto denominators = convergent_denominators(y, top_dim, n_value - 1);
        for (std::int64_t q : denominators) {
            if (const std::int64_t r = order_from_multiple(a, q, n_value); r != 0) return r;
        }
        if (!denominators.empty()) {
            const std::int64_t best = denominators.back();
            if (std::find(candidates.begin(), candidates.end(), best) == candidates.end()) {
                if (candidates.size() == 4) candidates.erase(candidates.begin());
                candidates.push_back(best);
            }
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                const std::int64_t combined = std::lcm(candidates[i], candidates[j]);
                if (combined >= n_value) continue;
                if (const std::int64_t r = order_from_multiple(a, combined, n_value); r != 0) {
                    return r;
                }
            }
        }
    }
    throw budget_error("find_order_quantum: sample budget exhausted, enlarge t or reseed");
}

// The five classical steps around the quantum subroutine. forced_a, when
// nonzero, is used for the first attempt only; rejected bases are resampled
// uniformly from (1, N).
inline shor_result shor_factor(std::int64_t n_value, rng_state& rng, std::int64_t forced_a = 0,
                               std::size_t t = 0, std::size_t max_attempts = 32) {
    if (n_value < 4) throw std::invalid_argument("shor_factor: N must be at least 4");
    if (forced_a != 0 && (forced_a <= 1 || forced_a >= n_value)) {
        throw std::invalid_argument("shor_factor: forced base must satisfy 1 < a < N");
    }

    shor_result result;
    result.n_value = n_value;

    // Step 1: primes and prime powers are declared, not factored quantumly.
    if (is_prime(n_value)) {
        result.method = shor_method::prime;
        return result;
    }
    if (const std::int64_t base = prime_power_base(n_value); base != 0) {
        result.method = shor_method::prime_power;
        result.factor = base;
        return result;
    }

    const std::size_t top =
        t != 0 ? t : 2 * std::bit_width(static_cast<std::uint64_t>(n_value - 1));

    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        // Step 2: pick a base; a shared factor ends the search immediately.
        const std::int64_t a =
            (attempt == 1 && forced_a != 0)
                ? forced_a
                : 2 + static_cast<std::int64_t>(
                          rng.next_below(static_cast<std::uint64_t>(n_value - 2)));
        result.a_used = a;
        result.attempts = attempt;
        if (const std::int64_t shared = std::gcd(a, n_value); shared != 1) {
            result.method = shor_method::gcd;
            result.factor = shared;
            return result;
        }

        // Step 3: quantum order finding.
        const std::int64_t r = find_order_quantum(a, n_value, top, rng);

        // Step 4: odd order or a^(r/2) = -1 (mod N) means this base is useless.
        if (r % 2 != 0) continue;
        const std::int64_t half_power = modpow(a, r / 2, n_value);
        if (half_power == n_value - 1) continue;

        // Step 5: at least one of gcd(a^(r/2) -+ 1, N) is a nontrivial factor.
        std::int64_t factor = 0;
        for (const std::int64_t candidate :
             {std::gcd(half_power - 1, n_value), std::gcd(half_power + 1, n_value)}) {
            if (candidate > 1 && candidate < n_value) {
                factor = factor == 0 ? candidate : std::min(factor, candidate);
            }
        }
        if (factor == 0 || n_value % factor != 0 || modpow(a, r, n_value) != 1) {
            throw std::logic_error("shor_factor: postcondition violated");
        }
        result.method = shor_method::quantum;
        result.factor = factor;
        result.order = r;
        return result;
    }
    throw budget_error("shor_factor: attempt budget exhausted");
}

}  // namespace qsim
