// serial.hpp
// Bit-exact textual circuit interchange (.qcirc): a writer and a parser that
// invert each other, with matrix entries hex-encoded as their raw IEEE-754
// bit patterns so round trips preserve every float exactly. Also a
// human-readable ASCII diagram renderer, one row per wire.

#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsim/circuit.hpp"

namespace qsim {

struct parse_error : std::runtime_error {
    parse_error(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                             ": " + what),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

namespace detail {

inline void append_hex_double(std::string& out, double v) {
    static const char digits[] = "0123456789abcdef";
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (std::size_t byte = 0; byte < 8; ++byte) {  // little-endian byte order
        const std::uint8_t b = static_cast<std::uint8_t>(bits >> (8 * byte));
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
}

inline void append_wire_list(std::string& out, const std::vector<wire_id>& wires) {
    for (std::size_t i = 0; i < wires.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(wires[i]);
    }
}

inline void append_controls(std::string& out, const std::vector<control_spec>& controls) {
    for (const control_spec& ctl : controls) {
        out += " ctrl ";
        out += std::to_string(ctl.wire);
        out.push_back(':');
        out.push_back(ctl.desired ? '1' : '0');
    }
}

inline void append_quoted(std::string& out, const std::string& text) {
    out.push_back('"');
    for (char ch : text) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out.push_back(ch);
        }
    }
    out.push_back('"');
}

}  // namespace detail

// Canonical text form; byte-identical across runs for the same circuit.
inline std::string write_lines(const circuit& c) {
    {
        auto issues = validate(c);
        if (!issues.empty()) {
            throw std::invalid_argument("write_lines: invalid circuit (op " +
                                        std::to_string(issues.front().op_index) + ": " +
                                        issues.front().message + ")");
        }
    }
    std::string out = "qcirc 1\nwires " + std::to_string(c.wire_count()) + "\n";
    for (const circuit_op& op : c.ops()) {
        if (const auto* in = std::get_if<op_init>(&op)) {
            out += "init " + std::to_string(in->wire) + (in->value ? " 1" : " 0");
        } else if (const auto* g = std::get_if<op_gate>(&op)) {
            out += "gate ";
            out += gate_name(g->g);
            out.push_back(' ');
            out += std::to_string(g->target);
            detail::append_controls(out, g->controls);
        } else if (const auto* u = std::get_if<op_unitary>(&op)) {
            out += "unitary " + std::to_string(u->u.wires()) + " ";
            detail::append_wire_list(out, u->wires);
            out.push_back(' ');
            for (cplx z : u->u.entries()) {
                detail::append_hex_double(out, z.real());
                detail::append_hex_double(out, z.imag());
            }
            detail::append_controls(out, u->controls);
        } else if (const auto* m = std::get_if<op_measure>(&op)) {
            out += "measure ";
            detail::append_wire_list(out, m->wires);
        } else if (const auto* d = std::get_if<op_discard>(&op)) {
            out += "discard ";
            detail::append_wire_list(out, d->wires);
        } else if (const auto* cm = std::get_if<op_comment>(&op)) {
            out += "comment ";
            detail::append_quoted(out, cm->text);
        } else if (const auto* l = std::get_if<op_label>(&op)) {
            out += "label " + std::to_string(l->wire) + " ";
            detail::append_quoted(out, l->text);
        }
        out.push_back('\n');
    }
    out += "output";
    if (!c.output_order().empty()) {
        out.push_back(' ');
        detail::append_wire_list(out, c.output_order());
    }
    out.push_back('\n');
    return out;
}

namespace detail {

// Single-line cursor with 1-based column reporting.
class line_cursor {
public:
    line_cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    std::size_t column() const { return pos_ + 1; }
    bool at_end() const { return pos_ >= text_.size(); }

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error(line_, column(), what);
    }

    // Consumes the single-space separator plus the next token.
    std::string_view next_token(const char* what) {
        if (pos_ > 0) {
            if (at_end() || text_[pos_] != ' ') fail(std::string("expected ") + what);
            ++pos_;
        }
        if (at_end() || text_[pos_] == ' ') fail(std::string("expected ") + what);
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ' ') ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::string next_quoted(const char* what) {
        if (pos_ > 0) {
            if (at_end() || text_[pos_] != ' ') fail(std::string("expected ") + what);
            ++pos_;
        }
        if (at_end() || text_[pos_] != '"') fail(std::string("expected quoted ") + what);
        ++pos_;
        std::string value;
        while (true) {
            if (at_end()) fail("unterminated quoted string");
            const char ch = text_[pos_++];
            if (ch == '"') break;
            if (ch == '\\') {
                if (at_end()) fail("dangling escape");
                const char esc = text_[pos_++];
                if (esc == '"') value.push_back('"');
                else if (esc == '\\') value.push_back('\\');
                else if (esc == 'n') value.push_back('\n');
                else fail(std::string("unknown escape \\") + esc);
            } else {
                value.push_back(ch);
            }
        }
        return value;
    }

    void expect_end() const {
        if (!at_end()) throw parse_error(line_, column(), "trailing characters");
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

inline std::uint64_t parse_uint(line_cursor& cur, std::string_view token, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        cur.fail(std::string("malformed ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

inline std::vector<wire_id> parse_wire_list(line_cursor& cur, std::string_view token,
                                            const char* what) {
    std::vector<wire_id> wires;
    std::size_t start = 0;
    while (start <= token.size()) {
        std::size_t comma = token.find(',', start);
        if (comma == std::string_view::npos) comma = token.size();
        const std::string_view piece = token.substr(start, comma - start);
        if (piece.empty()) cur.fail(std::string("malformed ") + what + " list");
        wires.push_back(static_cast<wire_id>(parse_uint(cur, piece, what)));
        start = comma + 1;
        if (comma == token.size()) break;
    }
    return wires;
}

inline std::vector<control_spec> parse_controls(line_cursor& cur) {
    std::vector<control_spec> controls;
    while (!cur.at_end()) {
        const std::string_view kw = cur.next_token("ctrl");
        if (kw != "ctrl") cur.fail("expected 'ctrl', got '" + std::string(kw) + "'");
        const std::string_view spec = cur.next_token("control spec");
        const std::size_t colon = spec.find(':');
        if (colon == std::string_view::npos || colon + 2 != spec.size() ||
            (spec[colon + 1] != '0' && spec[colon + 1] != '1')) {
            cur.fail("control spec must be <wire>:<0|1>");
        }
        const wire_id w = static_cast<wire_id>(parse_uint(cur, spec.substr(0, colon), "wire"));
        controls.push_back({w, spec[colon + 1] == '1'});
    }
    return controls;
}

inline double parse_hex_double(line_cursor& cur, std::string_view hex) {
    std::uint64_t bits = 0;
    for (std::size_t byte = 0; byte < 8; ++byte) {
        std::uint8_t value = 0;
        for (std::size_t nibble = 0; nibble < 2; ++nibble) {
            const char ch = hex[byte * 2 + nibble];
            std::uint8_t digit;
            if (ch >= '0' && ch <= '9') digit = static_cast<std::uint8_t>(ch - '0');
            else if (ch >= 'a' && ch <= 'f') digit = static_cast<std::uint8_t>(ch - 'a' + 10);
            else cur.fail("malformed hex digit");
            value = static_cast<std::uint8_t>((value << 4) | digit);
        }
        bits |= static_cast<std::uint64_t>(value) << (8 * byte);
    }
    return std::bit_cast<double>(bits);
}

}  // namespace detail

// Inverse of write_lines. Throws parse_error carrying the line (and column)
// of the first problem; semantic problems found by validate() are reported
// at the offending op's line.
inline circuit parse_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.size() < 3) throw parse_error(1, 1, "truncated document");

    {
        detail::line_cursor cur(lines[0], 1);
        if (cur.next_token("directive") != "qcirc") cur.fail("expected 'qcirc' header");
        const auto version = detail::parse_uint(cur, cur.next_token("version"), "version");
        if (version != 1) cur.fail("unsupported format version " + std::to_string(version));
        cur.expect_end();
    }
    std::size_t declared_wires = 0;
    {
        detail::line_cursor cur(lines[1], 2);
        if (cur.next_token("directive") != "wires") cur.fail("expected 'wires' header");
        declared_wires = detail::parse_uint(cur, cur.next_token("wire count"), "wire count");
        cur.expect_end();
    }

    std::vector<circuit_op> ops;
    std::vector<std::size_t> op_lines;
    std::vector<wire_id> output;
    std::size_t output_line = 0;

    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        detail::line_cursor cur(lines[i], line_no);
        if (output_line != 0) throw parse_error(line_no, 1, "content after output footer");
        const std::string_view directive = cur.next_token("directive");

        if (directive == "init") {
            const auto w = detail::parse_uint(cur, cur.next_token("wire"), "wire");
            const std::string_view v = cur.next_token("init value");
            if (v != "0" && v != "1") cur.fail("init value must be 0 or 1");
            cur.expect_end();
            ops.push_back(op_init{static_cast<wire_id>(w), v == "1"});
        } else if (directive == "gate") {
            const std::string_view name = cur.next_token("gate name");
            const auto g = gate_from_name(std::string(name));
            if (!g) cur.fail("unknown gate '" + std::string(name) + "'");
            const auto target = detail::parse_uint(cur, cur.next_token("target"), "target");
            auto controls = detail::parse_controls(cur);
            ops.push_back(op_gate{*g, static_cast<wire_id>(target), std::move(controls)});
        } else if (directive == "unitary") {
            const auto k = detail::parse_uint(cur, cur.next_token("wire count"), "wire count");
            if (k == 0 || k > max_dense_wires) cur.fail("unitary wire count out of range");
            auto wires = detail::parse_wire_list(cur, cur.next_token("wire list"), "wire");
            const std::string_view hex = cur.next_token("matrix data");
            const std::size_t dim = std::size_t{1} << k;
            if (hex.size() != dim * dim * 32) {
                cur.fail("matrix data must be " + std::to_string(dim * dim * 32) +
                         " hex digits for " + std::to_string(k) + " wires");
            }
            std::vector<cplx> entries(dim * dim);
            for (std::size_t e = 0; e < entries.size(); ++e) {
                const double re = detail::parse_hex_double(cur, hex.substr(e * 32, 16));
                const double im = detail::parse_hex_double(cur, hex.substr(e * 32 + 16, 16));
                entries[e] = cplx{re, im};
            }
            auto controls = detail::parse_controls(cur);
            square_unitary u = [&] {
                try {
                    return square_unitary::from_entries_verified(k, std::move(entries));
                } catch (const std::exception& ex) {
                    cur.fail(ex.what());
                }
            }();
            ops.push_back(op_unitary{std::move(u), std::move(wires), std::move(controls)});
        } else if (directive == "measure") {
            auto wires = detail::parse_wire_list(cur, cur.next_token("wire list"), "wire");
            cur.expect_end();
            ops.push_back(op_measure{std::move(wires)});
        } else if (directive == "discard") {
            auto wires = detail::parse_wire_list(cur, cur.next_token("wire list"), "wire");
            cur.expect_end();
            ops.push_back(op_discard{std::move(wires)});
        } else if (directive == "comment") {
            std::string text = cur.next_quoted("comment text");
            cur.expect_end();
            ops.push_back(op_comment{std::move(text)});
        } else if (directive == "label") {
            const auto w = detail::parse_uint(cur, cur.next_token("wire"), "wire");
            std::string text = cur.next_quoted("label text");
            cur.expect_end();
            ops.push_back(op_label{static_cast<wire_id>(w), std::move(text)});
        } else if (directive == "output") {
            if (!cur.at_end()) {
                output = detail::parse_wire_list(cur, cur.next_token("wire list"), "wire");
            }
            cur.expect_end();
            output_line = line_no;
            continue;
        } else {
            cur.fail("unknown directive '" + std::string(directive) + "'");
        }
        op_lines.push_back(line_no);
    }
    if (output_line == 0) throw parse_error(lines.size(), 1, "missing output footer");

    circuit c = circuit::from_parts(declared_wires, std::move(ops), std::move(output));
    const auto issues = validate(c);
    if (!issues.empty()) {
        const validation_issue& first = issues.front();
        const std::size_t line =
            first.op_index < op_lines.size() ? op_lines[first.op_index] : output_line;
        throw parse_error(line, 1, first.message);
    }
    return c;
}

// --- ASCII rendering ---------------------------------------------------------

namespace detail {

inline std::size_t utf8_length(std::string_view s) {
    std::size_t count = 0;
    for (unsigned char ch : s) {
        if ((ch & 0xC0) != 0x80) ++count;
    }
    return count;
}

enum class wire_draw_state { pending, quantum, classical, gone };

inline const char* fill_for(wire_draw_state st) {
    switch (st) {
        case wire_draw_state::pending: return " ";
        case wire_draw_state::quantum: return "─";
        case wire_draw_state::classical: return "═";
        case wire_draw_state::gone: return " ";
    }
    return " ";
}

inline void append_repeated(std::string& out, const char* piece, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) out += piece;
}

}  // namespace detail

// One row per wire, time flowing left to right; each op occupies one column.
// Gates render as [H], controls as ● (desired 1) or ○ (desired 0), wires a
// connector passes through as ┼, measurement as [M], discard as ⏚, and a
// measured wire continues as a doubled line. Comments render as a ¦ barrier,
// labels as their text on the labelled wire.
inline std::string render_ascii(const circuit& c) {
    {
        auto issues = validate(c);
        if (!issues.empty()) {
            throw std::invalid_argument("render_ascii: invalid circuit: " +
                                        issues.front().message);
        }
    }
    const std::size_t n = c.wire_count();
    std::vector<detail::wire_draw_state> state(n, detail::wire_draw_state::pending);
    std::vector<std::string> rows(n);

    for (const circuit_op& op : c.ops()) {
        std::vector<std::string> cell(n);
        auto place_controls = [&](const std::vector<control_spec>& controls) {
            for (const control_spec& ctl : controls) cell[ctl.wire] = ctl.desired ? "●" : "○";
        };
        std::vector<wire_id> involved;

        if (const auto* in = std::get_if<op_init>(&op)) {
            cell[in->wire] = in->value ? "|1⟩" : "|0⟩";
            state[in->wire] = detail::wire_draw_state::quantum;
        } else if (const auto* g = std::get_if<op_gate>(&op)) {
            cell[g->target] = std::string("[") + gate_name(g->g) + "]";
            place_controls(g->controls);
            involved.push_back(g->target);
            for (const auto& ctl : g->controls) involved.push_back(ctl.wire);
        } else if (const auto* u = std::get_if<op_unitary>(&op)) {
            for (std::size_t j = 0; j < u->wires.size(); ++j) {
                cell[u->wires[j]] = "[U" + std::to_string(j) + "]";
                involved.push_back(u->wires[j]);
            }
            place_controls(u->controls);
            for (const auto& ctl : u->controls) involved.push_back(ctl.wire);
        } else if (const auto* m = std::get_if<op_measure>(&op)) {
            for (wire_id w : m->wires) {
                cell[w] = "[M]";
                state[w] = detail::wire_draw_state::classical;
            }
        } else if (const auto* d = std::get_if<op_discard>(&op)) {
            for (wire_id w : d->wires) cell[w] = "⏚";
        } else if (std::get_if<op_comment>(&op)) {
            for (std::size_t w = 0; w < n; ++w) {
                if (state[w] != detail::wire_draw_state::pending &&
                    state[w] != detail::wire_draw_state::gone) {
                    cell[w] = "¦";
                }
            }
        } else if (const auto* l = std::get_if<op_label>(&op)) {
            std::string text = l->text;
            std::replace(text.begin(), text.end(), '\n', ' ');  // keep one row per wire
            cell[l->wire] = text.empty() ? "·" : text;
        }

        // connector pass-throughs between the op's outermost wires
        if (involved.size() > 1) {
            const auto [lo_it, hi_it] = std::minmax_element(involved.begin(), involved.end());
            for (wire_id w = *lo_it + 1; w < *hi_it; ++w) {
                if (!cell[w].empty()) continue;
                cell[w] = (state[w] == detail::wire_draw_state::quantum ||
                           state[w] == detail::wire_draw_state::classical)
                              ? "┼"
                              : "│";
            }
        }

        std::size_t width = 1;
        for (const std::string& s : cell) width = std::max(width, detail::utf8_length(s));

        for (std::size_t w = 0; w < n; ++w) {
            const char* fill = detail::fill_for(state[w]);
            if (cell[w].empty()) {
                detail::append_repeated(rows[w], fill, width);
            } else {
                const std::size_t pad = width - detail::utf8_length(cell[w]);
                detail::append_repeated(rows[w], fill, pad / 2);
                rows[w] += cell[w];
                detail::append_repeated(rows[w], fill, pad - pad / 2);
            }
            // one-fill separator after the column, in the post-op state
            if (const auto* d = std::get_if<op_discard>(&op)) {
                for (wire_id dw : d->wires) {
                    if (dw == w) state[w] = detail::wire_draw_state::gone;
                }
            }
            rows[w] += detail::fill_for(state[w]);
        }
    }

    std::string out;
    for (std::size_t w = 0; w < n; ++w) {
        out += rows[w];
        out.push_back('\n');
    }
    return out;
}

}  // namespace qsim
