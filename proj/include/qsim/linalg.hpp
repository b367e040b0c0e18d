// linalg.hpp
// Dense complex vectors and matrices for exact statevector simulation:
// square unitaries over k wires, Kronecker products, unitarity checking,
// and application of a small unitary to selected wires of a state.
//
// Convention used everywhere in this library: wire 0 carries the MOST
// significant bit of a basis-state index (big-endian wire order).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsim {

using cplx = std::complex<double>;

inline constexpr double inv_sqrt2 = 0.70710678118654752440;

// Hard limits. Dense matrices are capped well below the simulation cap:
// a 2^10 x 2^10 matrix is the largest anything in this library emits.
inline constexpr std::size_t max_sim_wires = 22;
inline constexpr std::size_t max_dense_wires = 10;
inline constexpr std::size_t max_row_builder_wires = 6;

// Tolerances: construction-time unitarity vs runtime norm drift.
inline constexpr double unitarity_tol = 1e-10;
inline constexpr double norm_tol = 1e-12;

namespace detail {

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline std::size_t log2_exact(std::size_t v) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < v) ++k;
    return k;
}

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

// True iff the candidate matrix satisfies max |(M†M - I)[i][j]| <= tol.
// Throws on malformed input (non-square or non-power-of-two dimension).
inline bool check_unitary(const std::vector<std::vector<cplx>>& rows, double tol) {
    const std::size_t dim = rows.size();
    if (!detail::is_power_of_two(dim)) {
        throw std::invalid_argument("check_unitary: dimension must be a power of two, got " +
                                    std::to_string(dim));
    }
    for (const auto& row : rows) {
        if (row.size() != dim) {
            throw std::invalid_argument("check_unitary: matrix is not square");
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            cplx dot{0.0, 0.0};
            for (std::size_t m = 0; m < dim; ++m) {
                dot += std::conj(rows[m][i]) * rows[m][j];
            }
            if (i == j) dot -= cplx{1.0, 0.0};
            if (std::abs(dot) > tol) return false;
        }
    }
    return true;
}

// Dense 2^k x 2^k complex matrix, unitary by construction.
// Row-major storage; entry(r, c) is row r, column c.
class square_unitary {
public:
    static square_unitary identity(std::size_t wires) {
        square_unitary u(wires);
        for (std::size_t i = 0; i < u.dim_; ++i) u.entries_[i * u.dim_ + i] = cplx{1.0, 0.0};
        u.permutation_ = true;
        return u;
    }

    // Generic row-list builder subsuming fixed-size 4x4/8x8/16x16 constructors.
    // Accepts 2^k rows for k <= max_row_builder_wires and verifies unitarity.
    static square_unitary from_rows(const std::vector<std::vector<cplx>>& rows) {
        const std::size_t dim = rows.size();
        if (!detail::is_power_of_two(dim)) {
            throw std::invalid_argument("square_unitary: row count must be a power of two");
        }
        const std::size_t k = detail::log2_exact(dim);
        if (k > max_row_builder_wires) {
            throw std::length_error("square_unitary: row builder limited to " +
                                    std::to_string(max_row_builder_wires) + " wires");
        }
        for (const auto& row : rows) {
            for (cplx z : row) {
                if (!detail::finite(z)) {
                    throw std::invalid_argument("square_unitary: non-finite entry");
                }
            }
        }
        if (!check_unitary(rows, unitarity_tol)) {
            throw std::invalid_argument("square_unitary: matrix is not unitary");
        }
        square_unitary u(k);
        for (std::size_t r = 0; r < dim; ++r) {
            std::copy(rows[r].begin(), rows[r].end(), u.entries_.begin() + r * dim);
        }
        u.permutation_ = u.detect_permutation();
        return u;
    }

    // 0/1 matrix from a basis permutation: image[in] = out. Only the
    // bijection needs verifying, so this path admits matrices above the
    // dense-check cap (up to max_dense_wires).
    static square_unitary from_permutation(const std::vector<std::size_t>& image) {
        const std::size_t dim = image.size();
        if (!detail::is_power_of_two(dim)) {
            throw std::invalid_argument("square_unitary: permutation size must be a power of two");
        }
        const std::size_t k = detail::log2_exact(dim);
        if (k > max_dense_wires) {
            throw std::length_error("square_unitary: permutation exceeds max dense wires");
        }
        std::vector<bool> seen(dim, false);
        for (std::size_t out : image) {
            if (out >= dim || seen[out]) {
                throw std::invalid_argument("square_unitary: image is not a bijection");
            }
            seen[out] = true;
        }
        square_unitary u(k);
        for (std::size_t in = 0; in < dim; ++in) {
            u.entries_[image[in] * dim + in] = cplx{1.0, 0.0};
        }
        u.permutation_ = true;
        return u;
    }

    // Entry list as written by the interchange format. Verification policy:
    // dense unitarity check when small enough, otherwise the matrix must be a
    // permutation (the only large matrices this library emits).
    static square_unitary from_entries_verified(std::size_t wires, std::vector<cplx> entries) {
        if (wires == 0 || wires > max_dense_wires) {
            throw std::length_error("square_unitary: wire count out of range");
        }
        const std::size_t dim = std::size_t{1} << wires;
        if (entries.size() != dim * dim) {
            throw std::invalid_argument("square_unitary: entry count mismatch");
        }
        for (cplx z : entries) {
            if (!detail::finite(z)) throw std::invalid_argument("square_unitary: non-finite entry");
        }
        square_unitary u(wires);
        u.entries_ = std::move(entries);
        u.permutation_ = u.detect_permutation();
        if (wires <= max_row_builder_wires) {
            std::vector<std::vector<cplx>> rows(dim, std::vector<cplx>(dim));
            for (std::size_t r = 0; r < dim; ++r) {
                for (std::size_t c = 0; c < dim; ++c) rows[r][c] = u.entries_[r * dim + c];
            }
            if (!check_unitary(rows, unitarity_tol)) {
                throw std::invalid_argument("square_unitary: matrix is not unitary");
            }
        } else if (!u.permutation_) {
            throw std::invalid_argument(
                "square_unitary: matrices above 2^" + std::to_string(max_row_builder_wires) +
                " must be basis permutations");
        }
        return u;
    }

    std::size_t wires() const { return wires_; }
    std::size_t dim() const { return dim_; }
    bool is_permutation() const { return permutation_; }

    cplx entry(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    std::span<const cplx> row(std::size_t r) const { return {entries_.data() + r * dim_, dim_}; }
    const std::vector<cplx>& entries() const { return entries_; }

    square_unitary adjoint() const {
        square_unitary a(wires_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                a.entries_[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
            }
        }
        a.permutation_ = permutation_;
        return a;
    }

    friend bool operator==(const square_unitary& a, const square_unitary& b) {
        return a.wires_ == b.wires_ && a.entries_ == b.entries_;
    }

private:
    explicit square_unitary(std::size_t wires)
        : wires_(wires), dim_(std::size_t{1} << wires), entries_(dim_ * dim_, cplx{0.0, 0.0}) {}

    bool detect_permutation() const {
        std::vector<bool> col_hit(dim_, false);
        for (std::size_t r = 0; r < dim_; ++r) {
            std::size_t hits = 0;
            for (std::size_t c = 0; c < dim_; ++c) {
                const cplx z = entries_[r * dim_ + c];
                if (std::abs(z) <= unitarity_tol) continue;
                if (std::abs(z - cplx{1.0, 0.0}) > unitarity_tol) return false;
                if (col_hit[c]) return false;
                col_hit[c] = true;
                ++hits;
            }
            if (hits != 1) return false;
        }
        return true;
    }

    std::size_t wires_;
    std::size_t dim_;
    std::vector<cplx> entries_;
    bool permutation_ = false;
};

// kron(a, b): a acts on the more significant wires of the result.
inline square_unitary kron(const square_unitary& a, const square_unitary& b) {
    if (a.wires() + b.wires() > max_dense_wires) {
        throw std::length_error("kron: result exceeds max dense wires");
    }
    const std::size_t da = a.dim(), db = b.dim();
    std::vector<cplx> entries(da * db * da * db, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t kcol = 0; kcol < da; ++kcol) {
            const cplx aik = a.entry(i, kcol);
            if (aik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < db; ++j) {
                for (std::size_t l = 0; l < db; ++l) {
                    entries[(i * db + j) * (da * db) + (kcol * db + l)] = aik * b.entry(j, l);
                }
            }
        }
    }
    return square_unitary::from_entries_verified(a.wires() + b.wires(), std::move(entries));
}

// 2^n amplitudes over n wires, unit norm. Wire 0 is the MSB of the index.
class state_vector {
public:
    state_vector() : wires_(0), amps_(1, cplx{1.0, 0.0}) {}

    explicit state_vector(std::size_t wires, std::size_t basis_index = 0) : wires_(wires) {
        if (wires > max_sim_wires) {
            throw std::length_error("state_vector: wire count exceeds max_sim_wires");
        }
        amps_.assign(std::size_t{1} << wires, cplx{0.0, 0.0});
        if (basis_index >= amps_.size()) {
            throw std::out_of_range("state_vector: basis index out of range");
        }
        amps_[basis_index] = cplx{1.0, 0.0};
    }

    std::size_t wires() const { return wires_; }
    std::size_t dim() const { return amps_.size(); }

    cplx operator[](std::size_t i) const { return amps_[i]; }
    cplx& operator[](std::size_t i) { return amps_[i]; }
    const std::vector<cplx>& amps() const { return amps_; }

    double norm() const {
        double s = 0.0;
        for (cplx a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    // Tensor-extend by one fresh wire in |value>. The new wire becomes the
    // least significant bit of the index (it gets the next wire id).
    void push_wire(bool value) {
        if (wires_ + 1 > max_sim_wires) {
            throw std::length_error("state_vector: wire count exceeds max_sim_wires");
        }
        std::vector<cplx> next(amps_.size() * 2, cplx{0.0, 0.0});
        for (std::size_t b = 0; b < amps_.size(); ++b) {
            next[b * 2 + (value ? 1 : 0)] = amps_[b];
        }
        amps_ = std::move(next);
        ++wires_;
    }

    // Bit of wire w in basis index b under the big-endian convention.
    bool wire_bit(std::size_t basis_index, std::size_t wire) const {
        return (basis_index >> (wires_ - 1 - wire)) & 1;
    }

private:
    std::size_t wires_;
    std::vector<cplx> amps_;
};

namespace detail {

// Insert a 0 bit at each of the given (ascending) bit positions.
inline std::uint64_t expand_with_zero_bits(std::uint64_t raw, std::span<const std::uint32_t> positions) {
    for (std::uint32_t p : positions) {
        const std::uint64_t low = raw & ((std::uint64_t{1} << p) - 1);
        raw = ((raw >> p) << (p + 1)) | low;
    }
    return raw;
}

}  // namespace detail

// Applies u to the named wires of s, in place. wires[0] is the most
// significant bit of u's local index. Basis states whose bits under
// ctrl_mask differ from ctrl_value are left untouched (ctrl_mask = 0
// means unconditional). Bit positions in the masks follow the global
// index convention (wire w sits at bit n-1-w).
inline void apply_unitary_in_place(state_vector& s, const square_unitary& u,
                                   std::span<const std::uint32_t> wires,
                                   std::uint64_t ctrl_mask = 0, std::uint64_t ctrl_value = 0) {
    const std::size_t n = s.wires();
    const std::size_t k = u.wires();
    if (wires.size() != k) {
        throw std::invalid_argument("apply_unitary: wire list does not match matrix size");
    }
    std::uint64_t target_mask = 0;
    std::vector<std::uint32_t> positions(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (wires[j] >= n) throw std::out_of_range("apply_unitary: wire out of range");
        positions[j] = static_cast<std::uint32_t>(n - 1 - wires[j]);
        const std::uint64_t bit = std::uint64_t{1} << positions[j];
        if (target_mask & bit) throw std::invalid_argument("apply_unitary: duplicate wire");
        target_mask |= bit;
    }
    if (ctrl_mask & target_mask) {
        throw std::invalid_argument("apply_unitary: control overlaps target wire");
    }

    const std::size_t dim = u.dim();
    std::vector<std::uint64_t> offset(dim);
    for (std::size_t li = 0; li < dim; ++li) {
        std::uint64_t off = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((li >> (k - 1 - j)) & 1) off |= std::uint64_t{1} << positions[j];
        }
        offset[li] = off;
    }

    std::vector<std::uint32_t> sorted_positions = positions;
    std::sort(sorted_positions.begin(), sorted_positions.end());

    std::vector<cplx> in(dim), out(dim);
    const std::uint64_t blocks = std::uint64_t{1} << (n - k);
    for (std::uint64_t raw = 0; raw < blocks; ++raw) {
        const std::uint64_t base = detail::expand_with_zero_bits(raw, sorted_positions);
        if ((base & ctrl_mask) != ctrl_value) continue;
        for (std::size_t li = 0; li < dim; ++li) in[li] = s[base + offset[li]];
        for (std::size_t r = 0; r < dim; ++r) {
            cplx acc{0.0, 0.0};
            const auto row = u.row(r);
            for (std::size_t c = 0; c < dim; ++c) acc += row[c] * in[c];
            out[r] = acc;
        }
        for (std::size_t li = 0; li < dim; ++li) s[base + offset[li]] = out[li];
    }
}

// Pure variant of the above.
inline state_vector apply_unitary(const state_vector& s, const square_unitary& u,
                                  std::span<const std::uint32_t> wires) {
    state_vector result = s;
    apply_unitary_in_place(result, u, wires);
    return result;
}

}  // namespace qsim
