// circuit.hpp
// Circuit intermediate representation and builder: wire allocation, named
// and custom gates with (possibly negative) controls, measurement, discard,
// and no-op annotations. A wire's lifecycle is Quantum -> Measured ->
// Discarded, in that order only.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qsim/linalg.hpp"

namespace qsim {

using wire_id = std::uint32_t;

enum class gate_kind { h, x, y, z, s, t };

inline const char* gate_name(gate_kind g) {
    switch (g) {
        case gate_kind::h: return "H";
        case gate_kind::x: return "X";
        case gate_kind::y: return "Y";
        case gate_kind::z: return "Z";
        case gate_kind::s: return "S";
        case gate_kind::t: return "T";
    }
    return "?";
}

inline std::optional<gate_kind> gate_from_name(const std::string& name) {
    if (name == "H") return gate_kind::h;
    if (name == "X") return gate_kind::x;
    if (name == "Y") return gate_kind::y;
    if (name == "Z") return gate_kind::z;
    if (name == "S") return gate_kind::s;
    if (name == "T") return gate_kind::t;
    return std::nullopt;
}

// Fixed 2x2 matrices for the named gates.
inline const square_unitary& gate_matrix(gate_kind g) {
    static const square_unitary h = square_unitary::from_rows(
        {{cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}}, {cplx{inv_sqrt2, 0}, cplx{-inv_sqrt2, 0}}});
    static const square_unitary x =
        square_unitary::from_rows({{cplx{0, 0}, cplx{1, 0}}, {cplx{1, 0}, cplx{0, 0}}});
    static const square_unitary y =
        square_unitary::from_rows({{cplx{0, 0}, cplx{0, -1}}, {cplx{0, 1}, cplx{0, 0}}});
    static const square_unitary z =
        square_unitary::from_rows({{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{-1, 0}}});
    static const square_unitary s_mat =
        square_unitary::from_rows({{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{0, 1}}});
    static const square_unitary t_mat = square_unitary::from_rows(
        {{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{inv_sqrt2, inv_sqrt2}}});
    switch (g) {
        case gate_kind::h: return h;
        case gate_kind::x: return x;
        case gate_kind::y: return y;
        case gate_kind::z: return z;
        case gate_kind::s: return s_mat;
        case gate_kind::t: return t_mat;
    }
    return x;  // unreachable
}

// A control satisfied when its wire reads |desired>. desired = 0 is a
// negative control.
struct control_spec {
    wire_id wire;
    bool desired;

    friend bool operator==(const control_spec&, const control_spec&) = default;
};

struct op_init {
    wire_id wire;
    bool value;
    friend bool operator==(const op_init&, const op_init&) = default;
};

struct op_gate {
    gate_kind g;
    wire_id target;
    std::vector<control_spec> controls;
    friend bool operator==(const op_gate&, const op_gate&) = default;
};

struct op_unitary {
    square_unitary u;
    std::vector<wire_id> wires;  // wires[0] = MSB of the matrix's local index
    std::vector<control_spec> controls;
    friend bool operator==(const op_unitary&, const op_unitary&) = default;
};

struct op_measure {
    std::vector<wire_id> wires;
    friend bool operator==(const op_measure&, const op_measure&) = default;
};

struct op_discard {
    std::vector<wire_id> wires;
    friend bool operator==(const op_discard&, const op_discard&) = default;
};

struct op_comment {
    std::string text;
    friend bool operator==(const op_comment&, const op_comment&) = default;
};

struct op_label {
    wire_id wire;
    std::string text;
    friend bool operator==(const op_label&, const op_label&) = default;
};

using circuit_op =
    std::variant<op_init, op_gate, op_unitary, op_measure, op_discard, op_comment, op_label>;

enum class wire_phase { quantum, measured, discarded };

struct validation_issue {
    // Index into ops(); ops().size() marks an issue with the output list.
    std::size_t op_index;
    std::string message;
};

// Ordered program over sequentially allocated wires. Builder methods throw
// std::logic_error on lifecycle misuse; parsed or hand-assembled circuits can
// carry violations, which validate() reports instead.
class circuit {
public:
    wire_id qinit(bool value) {
        if (saw_measurement_) {
            throw std::logic_error("qinit: wire allocation after measurement is not supported");
        }
        const wire_id w = static_cast<wire_id>(wire_count_);
        ops_.push_back(op_init{w, value});
        phases_.push_back(wire_phase::quantum);
        ++wire_count_;
        return w;
    }

    void gate(gate_kind g, wire_id target, std::vector<control_spec> controls = {}) {
        require_quantum(target, "gate target");
        check_controls(controls, {&target, 1});
        ops_.push_back(op_gate{g, target, std::move(controls)});
    }

    void custom_unitary(const square_unitary& u, std::vector<wire_id> wires,
                        std::vector<control_spec> controls = {}) {
        if (wires.size() != u.wires()) {
            throw std::invalid_argument("custom_unitary: wire list does not match matrix size");
        }
        for (std::size_t i = 0; i < wires.size(); ++i) {
            require_quantum(wires[i], "unitary wire");
            for (std::size_t j = i + 1; j < wires.size(); ++j) {
                if (wires[i] == wires[j]) {
                    throw std::invalid_argument("custom_unitary: duplicate wire");
                }
            }
        }
        check_controls(controls, wires);
        ops_.push_back(op_unitary{u, std::move(wires), std::move(controls)});
    }

    void measure(std::vector<wire_id> wires) {
        if (wires.empty()) throw std::invalid_argument("measure: empty wire list");
        for (wire_id w : wires) {
            require_quantum(w, "measure target");
        }
        for (wire_id w : wires) phases_[w] = wire_phase::measured;
        saw_measurement_ = true;
        ops_.push_back(op_measure{std::move(wires)});
    }

    void cdiscard(std::vector<wire_id> wires) {
        if (wires.empty()) throw std::invalid_argument("cdiscard: empty wire list");
        for (wire_id w : wires) {
            require_exists(w);
            if (phases_[w] != wire_phase::measured) {
                throw std::logic_error("cdiscard: wire " + std::to_string(w) + " is not measured");
            }
        }
        for (wire_id w : wires) phases_[w] = wire_phase::discarded;
        ops_.push_back(op_discard{std::move(wires)});
    }

    void comment(std::string text) { ops_.push_back(op_comment{std::move(text)}); }

    void label(wire_id wire, std::string text) {
        require_exists(wire);
        ops_.push_back(op_label{wire, std::move(text)});
    }

    void set_output(std::vector<wire_id> wires) {
        for (std::size_t i = 0; i < wires.size(); ++i) {
            require_exists(wires[i]);
            if (phases_[wires[i]] != wire_phase::measured) {
                throw std::logic_error("set_output: wire " + std::to_string(wires[i]) +
                                       " is not measured");
            }
            for (std::size_t j = i + 1; j < wires.size(); ++j) {
                if (wires[i] == wires[j]) {
                    throw std::invalid_argument("set_output: duplicate wire");
                }
            }
        }
        output_order_ = std::move(wires);
    }

    std::size_t wire_count() const { return wire_count_; }
    const std::vector<circuit_op>& ops() const { return ops_; }
    const std::vector<wire_id>& output_order() const { return output_order_; }

    // Raw assembly without lifecycle checks; validate() is the gatekeeper for
    // circuits built this way (the parser uses it).
    static circuit from_parts(std::size_t wire_count, std::vector<circuit_op> ops,
                              std::vector<wire_id> output_order) {
        circuit c;
        c.wire_count_ = wire_count;
        c.ops_ = std::move(ops);
        c.output_order_ = std::move(output_order);
        c.phases_.assign(wire_count, wire_phase::quantum);
        return c;
    }

    friend bool operator==(const circuit& a, const circuit& b) {
        return a.wire_count_ == b.wire_count_ && a.ops_ == b.ops_ &&
               a.output_order_ == b.output_order_;
    }

private:
    void require_exists(wire_id w) const {
        if (w >= wire_count_) {
            throw std::out_of_range("wire " + std::to_string(w) + " does not exist");
        }
    }

    void require_quantum(wire_id w, const char* what) const {
        require_exists(w);
        if (phases_[w] != wire_phase::quantum) {
            throw std::logic_error(std::string(what) + ": wire " + std::to_string(w) +
                                   " is no longer quantum");
        }
    }

    void check_controls(const std::vector<control_spec>& controls,
                        std::span<const wire_id> targets) const {
        for (std::size_t i = 0; i < controls.size(); ++i) {
            require_quantum(controls[i].wire, "control");
            for (wire_id t : targets) {
                if (controls[i].wire == t) {
                    throw std::invalid_argument("control wire coincides with a target wire");
                }
            }
            for (std::size_t j = i + 1; j < controls.size(); ++j) {
                if (controls[i].wire == controls[j].wire) {
                    throw std::invalid_argument("duplicate control wire");
                }
            }
        }
    }

    std::size_t wire_count_ = 0;
    std::vector<circuit_op> ops_;
    std::vector<wire_id> output_order_;
    std::vector<wire_phase> phases_;
    bool saw_measurement_ = false;
};

// Full structural re-check, usable on circuits from any source. Returns every
// violation found, each tagged with the offending op index (ops().size() for
// output-list issues).
inline std::vector<validation_issue> validate(const circuit& c) {
    std::vector<validation_issue> issues;
    const auto& ops = c.ops();
    std::vector<wire_phase> phase;  // grows as inits appear
    std::size_t inits_seen = 0;
    bool saw_measurement = false;

    auto exists = [&](wire_id w) { return w < phase.size(); };
    auto flag = [&](std::size_t idx, std::string msg) {
        issues.push_back({idx, std::move(msg)});
    };
    auto check_quantum = [&](std::size_t idx, wire_id w, const char* what) {
        if (!exists(w)) {
            flag(idx, std::string(what) + " references wire " + std::to_string(w) +
                          " before its init");
            return false;
        }
        if (phase[w] != wire_phase::quantum) {
            flag(idx, std::string(what) + " targets non-quantum wire " + std::to_string(w));
            return false;
        }
        return true;
    };
    auto check_op_wires = [&](std::size_t idx, const std::vector<wire_id>& wires,
                              const std::vector<control_spec>& controls, const char* what) {
        for (std::size_t i = 0; i < wires.size(); ++i) {
            check_quantum(idx, wires[i], what);
            for (std::size_t j = i + 1; j < wires.size(); ++j) {
                if (wires[i] == wires[j]) flag(idx, std::string(what) + " has duplicate wire");
            }
        }
        for (std::size_t i = 0; i < controls.size(); ++i) {
            check_quantum(idx, controls[i].wire, "control");
            for (wire_id t : wires) {
                if (controls[i].wire == t) flag(idx, "control coincides with target wire");
            }
            for (std::size_t j = i + 1; j < controls.size(); ++j) {
                if (controls[i].wire == controls[j].wire) flag(idx, "duplicate control wire");
            }
        }
    };

    for (std::size_t idx = 0; idx < ops.size(); ++idx) {
        const circuit_op& op = ops[idx];
        if (const auto* in = std::get_if<op_init>(&op)) {
            if (in->wire != inits_seen) {
                flag(idx, "init wire ids must be sequential, expected " +
                              std::to_string(inits_seen) + " got " + std::to_string(in->wire));
            }
            if (saw_measurement) flag(idx, "wire allocation after measurement");
            phase.push_back(wire_phase::quantum);
            ++inits_seen;
        } else if (const auto* g = std::get_if<op_gate>(&op)) {
            check_op_wires(idx, {g->target}, g->controls, "gate");
        } else if (const auto* u = std::get_if<op_unitary>(&op)) {
            if (u->wires.size() != u->u.wires()) {
                flag(idx, "unitary wire list does not match matrix size");
            }
            check_op_wires(idx, u->wires, u->controls, "unitary");
        } else if (const auto* m = std::get_if<op_measure>(&op)) {
            if (m->wires.empty()) flag(idx, "measure has empty wire list");
            for (wire_id w : m->wires) {
                if (check_quantum(idx, w, "measure")) phase[w] = wire_phase::measured;
            }
            saw_measurement = true;
        } else if (const auto* d = std::get_if<op_discard>(&op)) {
            if (d->wires.empty()) flag(idx, "discard has empty wire list");
            for (wire_id w : d->wires) {
                if (!exists(w)) {
                    flag(idx, "discard references wire " + std::to_string(w) +
                                  " before its init");
                } else if (phase[w] != wire_phase::measured) {
                    flag(idx, "discard targets non-measured wire " + std::to_string(w));
                } else {
                    phase[w] = wire_phase::discarded;
                }
            }
        } else if (const auto* l = std::get_if<op_label>(&op)) {
            if (!exists(l->wire)) {
                flag(idx, "label references wire " + std::to_string(l->wire) +
                              " before its init");
            }
        }
        // op_comment: nothing to check
    }

    if (inits_seen != c.wire_count()) {
        flag(ops.size(), "declared wire count " + std::to_string(c.wire_count()) +
                             " does not match " + std::to_string(inits_seen) + " init ops");
    }
    const auto& out = c.output_order();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!exists(out[i])) {
            flag(ops.size(), "output wire " + std::to_string(out[i]) + " does not exist");
        } else if (phase[out[i]] != wire_phase::measured) {
            flag(ops.size(), "output wire " + std::to_string(out[i]) +
                                 " is not measured (or was discarded)");
        }
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (out[i] == out[j]) flag(ops.size(), "duplicate output wire");
        }
    }
    return issues;
}

}  // namespace qsim
