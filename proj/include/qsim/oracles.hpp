// oracles.hpp
// Oracle constructors: named circuit fragments over a top and a bottom
// register. XOR oracles map |x>|y> to |x>|y xor f(x)>; the factoring oracle
// realizes controlled modular multiplication. Generators for property tests
// (hidden-string Simon oracles, marked-item search oracles) live here too.

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/number_theory.hpp"
#include "qsim/sim.hpp"

namespace qsim {

// A named fragment plus its register shape. The builder may only touch the
// wires it is handed and must leave the circuit valid.
struct oracle_spec {
    std::string name;
    std::size_t top_wires = 0;
    std::size_t bottom_wires = 0;
    std::function<void(circuit&, const std::vector<wire_id>& top,
                       const std::vector<wire_id>& bottom)>
        build;
};

namespace detail {

// Basis permutation of an XOR oracle on (top, bottom): index x*2^m + y maps
// to x*2^m + (y xor f[x]).
inline std::vector<std::size_t> xor_oracle_permutation(const std::vector<std::size_t>& f,
                                                       std::size_t bottom_wires) {
    const std::size_t top_dim = f.size();
    const std::size_t bottom_dim = std::size_t{1} << bottom_wires;
    std::vector<std::size_t> image(top_dim * bottom_dim);
    for (std::size_t x = 0; x < top_dim; ++x) {
        for (std::size_t y = 0; y < bottom_dim; ++y) {
            image[x * bottom_dim + y] = x * bottom_dim + (y ^ f[x]);
        }
    }
    return image;
}

inline std::vector<wire_id> concat(const std::vector<wire_id>& a, const std::vector<wire_id>& b) {
    std::vector<wire_id> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace detail

// --- Deutsch oracles: the four functions {0,1} -> {0,1} ------------------

// f(x) = 0: the oracle leaves the qubits alone (no gates at all).
inline oracle_spec deutsch_constant() {
    return {"deutsch_constant", 1, 1, [](circuit&, const auto&, const auto&) {}};
}

// f(x) = x: controlled-not from top onto bottom.
inline oracle_spec deutsch_balanced_identity() {
    return {"deutsch_balanced_identity", 1, 1,
            [](circuit& c, const std::vector<wire_id>& top, const std::vector<wire_id>& bottom) {
                c.gate(gate_kind::x, bottom[0], {{top[0], true}});
            }};
}

// f(x) = not x: negatively controlled not.
inline oracle_spec deutsch_balanced_not() {
    return {"deutsch_balanced_not", 1, 1,
            [](circuit& c, const std::vector<wire_id>& top, const std::vector<wire_id>& bottom) {
                c.gate(gate_kind::x, bottom[0], {{top[0], false}});
            }};
}

// f(x) = 1: unconditional flip of the bottom wire.
inline oracle_spec deutsch_constant_one() {
    return {"deutsch_constant_one", 1, 1,
            [](circuit& c, const std::vector<wire_id>&, const std::vector<wire_id>& bottom) {
                c.gate(gate_kind::x, bottom[0]);
            }};
}

// --- Deutsch-Jozsa oracles ------------------------------------------------

inline oracle_spec dj_constant(std::size_t n) {
    return {"dj_constant", n, 1, [](circuit&, const auto&, const auto&) {}};
}

// Parity of all top bits: one controlled-not per top wire. Balanced for
// every n >= 1.
inline oracle_spec dj_parity(std::size_t n) {
    return {"dj_parity", n, 1,
            [](circuit& c, const std::vector<wire_id>& top, const std::vector<wire_id>& bottom) {
                for (wire_id x : top) {
                    c.gate(gate_kind::x, bottom[0], {{x, true}});
                }
            }};
}

// --- Simon oracles ----------------------------------------------------------

// The worked 2-bit example with hidden string 11: f(00)=01, f(01)=10,
// f(10)=10, f(11)=01, emitted as the full 16x16 basis permutation.
inline oracle_spec simon_table1() {
    return {"simon_table1", 2, 2,
            [](circuit& c, const std::vector<wire_id>& top, const std::vector<wire_id>& bottom) {
                static const square_unitary u = square_unitary::from_permutation(
                    detail::xor_oracle_permutation({1, 2, 2, 1}, 2));
                c.custom_unitary(u, detail::concat(top, bottom));
            }};
}

// Generator enforcing the Simon promise for a given hidden string: x and
// x xor s share an image, images drawn distinct at random. s = 0^n yields a
// random one-to-one f instead.
inline oracle_spec simon_from_hidden_string(const std::string& s, rng_state& rng) {
    const std::size_t n = s.size();
    if (n == 0 || n > 5) {
        throw std::length_error("simon_from_hidden_string: supported for 1..5 bits");
    }
    std::size_t s_val = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("simon_from_hidden_string: not a bit string");
        }
        s_val = (s_val << 1) | static_cast<std::size_t>(ch == '1');
    }
    const std::size_t dim = std::size_t{1} << n;

    // Fisher-Yates over all n-bit values; the prefix supplies the images.
    std::vector<std::size_t> pool(dim);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = dim - 1; i > 0; --i) {
        std::swap(pool[i], pool[rng.next_below(i + 1)]);
    }

    std::vector<std::size_t> f(dim, dim);
    std::size_t next_image = 0;
    for (std::size_t x = 0; x < dim; ++x) {
        if (f[x] != dim) continue;
        f[x] = pool[next_image++];
        f[x ^ s_val] = f[x];
    }

    square_unitary u = square_unitary::from_permutation(detail::xor_oracle_permutation(f, n));
    return {"simon_hidden:" + s, n, n,
            [u = std::move(u)](circuit& c, const std::vector<wire_id>& top,
                               const std::vector<wire_id>& bottom) {
                c.custom_unitary(u, detail::concat(top, bottom));
            }};
}

// --- Grover oracle ----------------------------------------------------------

// Flips the bottom wire exactly on basis state x0: a multi-controlled not
// whose control mask spells x0 (wire 0 = most significant bit).
inline oracle_spec grover_marked(std::size_t n, std::size_t x0) {
    if (x0 >= (std::size_t{1} << n)) throw std::out_of_range("grover_marked: x0 out of range");
    return {"grover_marked:" + std::to_string(x0), n, 1,
            [n, x0](circuit& c, const std::vector<wire_id>& top,
                    const std::vector<wire_id>& bottom) {
                std::vector<control_spec> controls;
                controls.reserve(n);
                for (std::size_t j = 0; j < n; ++j) {
                    const bool bit = (x0 >> (n - 1 - j)) & 1;
                    controls.push_back({top[j], bit});
                }
                c.gate(gate_kind::x, bottom[0], std::move(controls));
            }};
}

// --- Factoring oracles ------------------------------------------------------

// Compiled circuit for f_(7,15), transcribed gate for gate. Under this
// library's conventions (top and bottom big-endian, bottom prepared at 1)
// it maps |x>|1> to |x>|7^x mod 15>.
inline oracle_spec mod15_base7() {
    return {"mod15_base7", 3, 4,
            [](circuit& c, const std::vector<wire_id>& top, const std::vector<wire_id>& bottom) {
                const wire_id x1 = top[1], x2 = top[2];
                const wire_id y0 = bottom[0], y1 = bottom[1], y2 = bottom[2], y3 = bottom[3];
                c.gate(gate_kind::x, y1, {{x2, true}});
                c.gate(gate_kind::x, y2, {{x2, true}});
                c.gate(gate_kind::x, y2, {{y0, true}});
                c.gate(gate_kind::x, y0, {{x1, true}, {y2, true}});
                c.gate(gate_kind::x, y2, {{y0, true}});
                c.gate(gate_kind::x, y1, {{y3, true}});
                c.gate(gate_kind::x, y3, {{x1, true}, {y1, true}});
                c.gate(gate_kind::x, y1, {{y3, true}});
            }};
}

// Compiled circuit for f_(20,21) with one negative control, transcribed
// verbatim. The head top wire is the only control (the exponent's least
// significant bit in the source encoding); kept for rendering parity.
inline oracle_spec mod21_base20() {
    return {"mod21_base20", 3, 5,
            [](circuit& c, const std::vector<wire_id>& top, const std::vector<wire_id>& bottom) {
                const wire_id cntrl = top[0];
                const wire_id y0 = bottom[0], y2 = bottom[2], y4 = bottom[4];
                c.gate(gate_kind::x, y4, {{cntrl, true}});
                c.gate(gate_kind::x, y2, {{cntrl, true}});
                c.gate(gate_kind::x, y0, {{cntrl, false}});
            }};
}

// Generic modular-exponentiation oracle: |x>|y> -> |x>|y * a^x mod N> for
// y < N, identity above. Realized as one controlled bottom-register
// permutation per top wire (multiply by a^(2^j) mod N); the composite equals
// the monolithic permutation on every basis state. Multipliers that reduce
// to 1 are skipped.
inline oracle_spec modexp_permutation(std::int64_t a, std::int64_t n_value, std::size_t t,
                                      std::size_t b) {
    if (n_value < 2) throw std::invalid_argument("modexp_permutation: modulus too small");
    if (std::gcd(a, n_value) != 1) {
        throw std::invalid_argument("modexp_permutation: base not coprime to modulus");
    }
    const std::size_t needed = std::bit_width(static_cast<std::uint64_t>(n_value - 1));
    if (b < needed) throw std::invalid_argument("modexp_permutation: bottom register too small");
    if (b > max_dense_wires || t + b > max_sim_wires) {
        throw std::length_error("modexp_permutation: register sizes exceed limits");
    }

    const std::size_t bottom_dim = std::size_t{1} << b;
    std::vector<square_unitary> multipliers;
    std::vector<std::size_t> top_index;
    for (std::size_t j = 0; j < t; ++j) {
        const std::int64_t m = modpow(a, std::int64_t{1} << (t - 1 - j), n_value);
        if (m == 1) continue;
        std::vector<std::size_t> image(bottom_dim);
        for (std::size_t y = 0; y < bottom_dim; ++y) {
            image[y] = y < static_cast<std::size_t>(n_value)
                           ? static_cast<std::size_t>(
                                 (static_cast<std::int64_t>(y) * m) % n_value)
                           : y;
        }
        multipliers.push_back(square_unitary::from_permutation(image));
        top_index.push_back(j);
    }

    return {"modexp:" + std::to_string(a) + ":" + std::to_string(n_value), t, b,
            [multipliers = std::move(multipliers), top_index = std::move(top_index)](
                circuit& c, const std::vector<wire_id>& top, const std::vector<wire_id>& bottom) {
                for (std::size_t i = 0; i < multipliers.size(); ++i) {
                    c.custom_unitary(multipliers[i], bottom, {{top[top_index[i]], true}});
                }
            }};
}

}  // namespace qsim
