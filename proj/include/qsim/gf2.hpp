// gf2.hpp
// GF(2) linear algebra on bit strings: rank and nullspace basis via Gaussian
// elimination. Bit strings are '0'/'1' text, leftmost character first.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsim {

namespace detail {

// Internal mask form: string position i sits at bit n-1-i, so the mask reads
// as the binary number the string spells.
inline std::uint64_t bits_to_mask(const std::string& s, std::size_t n) {
    if (s.size() != n) throw std::invalid_argument("gf2: row length mismatch");
    std::uint64_t m = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("gf2: row is not a bit string");
        m = (m << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return m;
}

inline std::string mask_to_bits(std::uint64_t m, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
        if ((m >> (n - 1 - i)) & 1) s[i] = '1';
    }
    return s;
}

}  // namespace detail

inline std::size_t gf2_rank(const std::vector<std::string>& rows, std::size_t n) {
    if (n > 64) throw std::length_error("gf2: at most 64 columns supported");
    std::vector<std::uint64_t> pivots;  // reduced, one leading bit each
    for (const std::string& row : rows) {
        std::uint64_t r = detail::bits_to_mask(row, n);
        for (std::uint64_t p : pivots) {
            const std::uint64_t lead = std::uint64_t{1} << (63 - std::countl_zero(p));
            if (r & lead) r ^= p;
        }
        if (r != 0) pivots.push_back(r);
    }
    return pivots.size();
}

// Basis of { s : row * s = 0 (mod 2) for every row }, sorted ascending.
// With no rows the basis spans the full n-dimensional space.
inline std::vector<std::string> gf2_nullspace(const std::vector<std::string>& rows,
                                              std::size_t n) {
    if (n > 64) throw std::length_error("gf2: at most 64 columns supported");

    // Row-reduce to echelon form, tracking the pivot column of each row.
    std::vector<std::uint64_t> echelon;
    std::vector<std::size_t> pivot_col;  // string position of the leading 1
    for (const std::string& row : rows) {
        std::uint64_t r = detail::bits_to_mask(row, n);
        for (std::size_t i = 0; i < echelon.size(); ++i) {
            if ((r >> (n - 1 - pivot_col[i])) & 1) r ^= echelon[i];
        }
        if (r == 0) continue;
        const std::size_t col = n - 1 - static_cast<std::size_t>(63 - std::countl_zero(r));
        // back-substitute into earlier rows to reach reduced form
        for (std::size_t i = 0; i < echelon.size(); ++i) {
            if ((echelon[i] >> (n - 1 - col)) & 1) echelon[i] ^= r;
        }
        echelon.push_back(r);
        pivot_col.push_back(col);
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t col : pivot_col) is_pivot[col] = true;

    std::vector<std::string> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::uint64_t v = std::uint64_t{1} << (n - 1 - free_col);
        for (std::size_t i = 0; i < echelon.size(); ++i) {
            if ((echelon[i] >> (n - 1 - free_col)) & 1) {
                v |= std::uint64_t{1} << (n - 1 - pivot_col[i]);
            }
        }
        basis.push_back(detail::mask_to_bits(v, n));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

}  // namespace qsim
