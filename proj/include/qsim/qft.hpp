// qft.hpp
// Gate-level quantum Fourier transform and its inverse over an ordered wire
// list, big-endian: wires[0] is the most significant bit of both input and
// output. Realizes |x> -> (1/sqrt(2^t)) sum_y exp(2*pi*i*x*y/2^t) |y>.

#pragma once

#include <numbers>
#include <vector>

#include "qsim/circuit.hpp"

namespace qsim {

// R_k = diag(1, exp(2*pi*i/2^k)); conjugated for the inverse transform.
inline square_unitary qft_rotation(std::size_t k, bool conjugate = false) {
    double angle = 2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << k);
    if (conjugate) angle = -angle;
    return square_unitary::from_rows(
        {{cplx{1.0, 0.0}, cplx{0.0, 0.0}}, {cplx{0.0, 0.0}, cplx{std::cos(angle), std::sin(angle)}}});
}

inline const square_unitary& swap_unitary() {
    static const square_unitary sw = square_unitary::from_permutation({0, 2, 1, 3});
    return sw;
}

// Standard decomposition: per wire an H followed by controlled rotations
// from every lower wire, then a swap layer to undo the bit reversal.
// Emits t(t+1)/2 gates plus floor(t/2) swaps. No rotation truncation.
inline void append_qft_big_endian(circuit& c, const std::vector<wire_id>& wires) {
    if (wires.empty()) throw std::invalid_argument("append_qft_big_endian: empty wire list");
    const std::size_t t = wires.size();
    for (std::size_t i = 0; i < t; ++i) {
        c.gate(gate_kind::h, wires[i]);
        for (std::size_t j = i + 1; j < t; ++j) {
            c.custom_unitary(qft_rotation(j - i + 1), {wires[i]}, {{wires[j], true}});
        }
    }
    for (std::size_t i = 0; i < t / 2; ++i) {
        c.custom_unitary(swap_unitary(), {wires[i], wires[t - 1 - i]});
    }
}

// Exact adjoint of the forward fragment: same ops reversed, rotations
// conjugated. Composing the two yields the identity.
inline void append_inverse_qft_big_endian(circuit& c, const std::vector<wire_id>& wires) {
    if (wires.empty()) {
        throw std::invalid_argument("append_inverse_qft_big_endian: empty wire list");
    }
    const std::size_t t = wires.size();
    for (std::size_t i = t / 2; i-- > 0;) {
        c.custom_unitary(swap_unitary(), {wires[i], wires[t - 1 - i]});
    }
    for (std::size_t i = t; i-- > 0;) {
        for (std::size_t j = t; j-- > i + 1;) {
            c.custom_unitary(qft_rotation(j - i + 1, true), {wires[i]}, {{wires[j], true}});
        }
        c.gate(gate_kind::h, wires[i]);
    }
}

}  // namespace qsim
