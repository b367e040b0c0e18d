// sim.hpp
// Exact statevector execution of circuits: seeded sampling runs (Born-rule
// measurement with collapse) and full exact outcome distributions computed
// by deferring every measurement to circuit end. Deferral is exact because
// the IR has no classically-conditioned operations.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/linalg.hpp"

namespace qsim {

// Deterministic seeded randomness. The generator is std::mt19937_64 with
// uniform doubles taken from the top 53 bits, so a given seed reproduces the
// same outcome sequence on every platform.
class rng_state {
public:
    explicit rng_state(std::uint64_t seed = 1) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) by fixed-point multiply.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct measurement_record {
    std::string bits;                     // in output_order
    std::map<wire_id, bool> wire_bits;    // every measured wire
};

inline std::uint64_t bits_to_index(const std::string& bits) {
    std::uint64_t v = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bits_to_index: not a bit string");
        v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return v;
}

inline std::string index_to_bits(std::uint64_t v, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((v >> (width - 1 - i)) & 1) s[i] = '1';
    }
    return s;
}

// Exact map from output bit strings to probabilities. std::map keeps keys in
// lexicographic (= numeric, fixed width) order, which the CLI relies on.
using outcome_distribution = std::map<std::string, double>;

inline double probability_of(const outcome_distribution& d, const std::string& bits) {
    auto it = d.find(bits);
    return it == d.end() ? 0.0 : it->second;
}

namespace detail {

inline void require_valid(const circuit& c, const char* caller) {
    if (c.wire_count() > max_sim_wires) {
        throw std::length_error(std::string(caller) + ": circuit exceeds " +
                                std::to_string(max_sim_wires) + " wires");
    }
    auto issues = validate(c);
    if (!issues.empty()) {
        throw std::invalid_argument(std::string(caller) + ": invalid circuit (op " +
                                    std::to_string(issues.front().op_index) + ": " +
                                    issues.front().message + ")");
    }
}

inline void controls_to_masks(const state_vector& s, const std::vector<control_spec>& controls,
                              std::uint64_t& mask, std::uint64_t& value) {
    mask = 0;
    value = 0;
    for (const control_spec& ctl : controls) {
        const std::uint64_t bit = std::uint64_t{1} << (s.wires() - 1 - ctl.wire);
        mask |= bit;
        if (ctl.desired) value |= bit;
    }
}

inline void check_norm(const state_vector& s, const char* caller) {
    const double drift = std::abs(s.norm() - 1.0);
    if (drift > 1e-9) {
        throw std::runtime_error(std::string(caller) + ": state norm drifted by " +
                                 std::to_string(drift));
    }
}

}  // namespace detail

// Applies a single gate or custom-unitary op (controls included) to a state.
// Init, measure, discard and annotations are not unitary ops and are rejected.
inline void apply_operation(state_vector& s, const circuit_op& op) {
    if (const auto* g = std::get_if<op_gate>(&op)) {
        std::uint64_t mask, value;
        detail::controls_to_masks(s, g->controls, mask, value);
        const wire_id target[1] = {g->target};
        apply_unitary_in_place(s, gate_matrix(g->g), target, mask, value);
    } else if (const auto* u = std::get_if<op_unitary>(&op)) {
        std::uint64_t mask, value;
        detail::controls_to_masks(s, u->controls, mask, value);
        apply_unitary_in_place(s, u->u, u->wires, mask, value);
    } else {
        throw std::invalid_argument("apply_operation: op is not a unitary operation");
    }
}

namespace detail {

// Evolves through every unitary op in order, ignoring measurement and
// discard. With no classical feedback in the IR this yields the exact
// pre-measurement state for all deferred measurements at once.
inline state_vector evolve_unitaries(const circuit& c, const char* caller) {
    state_vector s;
    for (const circuit_op& op : c.ops()) {
        if (const auto* in = std::get_if<op_init>(&op)) {
            s.push_wire(in->value);
        } else if (std::holds_alternative<op_gate>(op) || std::holds_alternative<op_unitary>(op)) {
            apply_operation(s, op);
            check_norm(s, caller);
        }
        // measure/discard deferred; comment/label are no-ops
    }
    return s;
}

}  // namespace detail

// One seeded execution. Ops run in order; a measure op samples each listed
// wire's marginal in turn (inverse CDF, outcome 0 first) and collapses the
// state before the next wire is sampled.
inline measurement_record run(const circuit& c, rng_state& rng) {
    detail::require_valid(c, "run");
    state_vector s;
    measurement_record record;
    for (const circuit_op& op : c.ops()) {
        if (const auto* in = std::get_if<op_init>(&op)) {
            s.push_wire(in->value);
        } else if (std::holds_alternative<op_gate>(op) || std::holds_alternative<op_unitary>(op)) {
            apply_operation(s, op);
            detail::check_norm(s, "run");
        } else if (const auto* m = std::get_if<op_measure>(&op)) {
            for (wire_id w : m->wires) {
                double p0 = 0.0;
                for (std::size_t b = 0; b < s.dim(); ++b) {
                    if (!s.wire_bit(b, w)) p0 += std::norm(s[b]);
                }
                const bool outcome = rng.next_unit() >= p0;
                const double p_outcome = outcome ? 1.0 - p0 : p0;
                if (p_outcome <= 0.0) {
                    throw std::runtime_error("run: measured an outcome of probability zero");
                }
                const double scale = 1.0 / std::sqrt(p_outcome);
                for (std::size_t b = 0; b < s.dim(); ++b) {
                    if (s.wire_bit(b, w) != outcome) {
                        s[b] = cplx{0.0, 0.0};
                    } else {
                        s[b] *= scale;
                    }
                }
                record.wire_bits[w] = outcome;
            }
        }
        // discard/comment/label: no effect on the state
    }
    record.bits.reserve(c.output_order().size());
    for (wire_id w : c.output_order()) {
        record.bits.push_back(record.wire_bits.at(w) ? '1' : '0');
    }
    return record;
}

// Exact joint distribution of the output bits, keyed by bit string in
// output_order convention. Entries with probability zero are omitted.
inline outcome_distribution exact_distribution(const circuit& c) {
    detail::require_valid(c, "exact_distribution");
    const state_vector s = detail::evolve_unitaries(c, "exact_distribution");
    const auto& out = c.output_order();
    outcome_distribution dist;
    std::string key(out.size(), '0');
    for (std::size_t b = 0; b < s.dim(); ++b) {
        const double p = std::norm(s[b]);
        if (p == 0.0) continue;
        for (std::size_t i = 0; i < out.size(); ++i) {
            key[i] = s.wire_bit(b, out[i]) ? '1' : '0';
        }
        dist[key] += p;
    }
    return dist;
}

// Exact state after all ops; only defined for measurement-free circuits.
inline state_vector final_state(const circuit& c) {
    detail::require_valid(c, "final_state");
    for (const circuit_op& op : c.ops()) {
        if (std::holds_alternative<op_measure>(op) || std::holds_alternative<op_discard>(op)) {
            throw std::logic_error("final_state: circuit contains measurement or discard");
        }
    }
    return detail::evolve_unitaries(c, "final_state");
}

}  // namespace qsim
