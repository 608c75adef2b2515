#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "unram/decompose.hpp"
#include "unram/multivector.hpp"

namespace unram {

/// A length-n Milnor K-theory symbol {m_1,...,m_n} whose entries are Laurent
/// monomials in t_1..t_m: row i of the exponent matrix is the exponent vector
/// of the i-th slot. Over an algebraically closed constant field every
/// constant is an ell-th power, so coefficients are always 1.
struct MonomialSymbol {
    std::uint32_t n_slots = 0;
    std::uint32_t num_vars = 0;
    std::uint32_t modulus = 2;
    std::vector<std::vector<std::int64_t>> exponents;  // n_slots x num_vars

    MonomialSymbol() = default;

    MonomialSymbol(std::uint32_t n, std::uint32_t m, std::uint32_t ell)
        : n_slots(n), num_vars(m), modulus(ell),
          exponents(n, std::vector<std::int64_t>(m, 0)) {
        if (!is_prime(ell)) throw input_error("MonomialSymbol: modulus is not prime");
    }

    static MonomialSymbol from_rows(std::vector<std::vector<std::int64_t>> rows, std::uint32_t m,
                                    std::uint32_t ell) {
        MonomialSymbol s(static_cast<std::uint32_t>(rows.size()), m, ell);
        for (const auto& r : rows)
            if (r.size() != m) throw input_error("MonomialSymbol: ragged exponent row");
        s.exponents = std::move(rows);
        return s;
    }

    bool operator==(const MonomialSymbol& o) const {
        return n_slots == o.n_slots && num_vars == o.num_vars && modulus == o.modulus &&
               exponents == o.exponents;
    }
    bool operator!=(const MonomialSymbol& o) const { return !(*this == o); }

    // "{t1*t3^2, t2}"; scale multiplies displayed exponents (used to render
    // symbols stored over the generators s_j = t_j^ell as t-monomials).
    std::string to_string(const std::string& letter = "t", std::int64_t scale = 1) const {
        std::string out = "{";
        for (std::uint32_t i = 0; i < n_slots; ++i) {
            if (i) out += ", ";
            std::string slot;
            for (std::uint32_t j = 0; j < num_vars; ++j) {
                std::int64_t e = exponents[i][j] * scale;
                if (e == 0) continue;
                if (!slot.empty()) slot += "*";
                slot += letter + std::to_string(j + 1);
                if (e != 1) slot += "^" + std::to_string(e);
            }
            out += slot.empty() ? "1" : slot;
        }
        out += "}";
        return out;
    }
};

/// The image of a symbol in the mod-ell monomial model: a canonical degree-n
/// multivector over F_ell^m obtained by wedging the exponent rows.
class SymbolClass {
public:
    explicit SymbolClass(Multivector canonical) : canonical_(std::move(canonical)) {
        if (canonical_.space() != Space::primal)
            throw input_error("SymbolClass: canonical multivector must live in Lambda(V)");
    }

    const Multivector& canonical() const { return canonical_; }
    std::uint32_t degree() const { return canonical_.degree(); }
    std::uint32_t num_vars() const { return canonical_.dim(); }
    std::uint32_t modulus() const { return canonical_.modulus(); }
    bool is_zero() const { return canonical_.is_zero(); }

    bool operator==(const SymbolClass& o) const { return canonical_ == o.canonical_; }
    bool operator!=(const SymbolClass& o) const { return !(*this == o); }

    std::string to_string() const { return canonical_.to_string(); }

private:
    Multivector canonical_;
};

/// Canonical form of a symbol: reduce each exponent row mod ell and wedge the
/// rows. Multilinearity and the Steinberg relation (with constants absorbed)
/// make this a complete invariant in the monomial model.
inline SymbolClass normalize(const MonomialSymbol& s) {
    std::vector<Multivector> rows;
    rows.reserve(s.n_slots);
    for (std::uint32_t i = 0; i < s.n_slots; ++i) {
        FpRow coords(s.num_vars);
        for (std::uint32_t j = 0; j < s.num_vars; ++j)
            coords[j] = mod_reduce(s.exponents[i][j], s.modulus);
        rows.push_back(Multivector::from_coords(coords, s.modulus, Space::primal));
    }
    return SymbolClass(wedge_all(rows, s.n_slots, s.num_vars, s.modulus, Space::primal));
}

/// Residue (tame symbol) at the coordinate valuation ord_{t_j}: contraction of
/// the canonical multivector with e_j dual. 1-based j.
inline SymbolClass residue(const SymbolClass& c, std::uint32_t j) {
    if (j < 1 || j > c.num_vars()) throw input_error("residue: variable index out of range");
    Multivector ej = Multivector::basis_element({j}, c.num_vars(), c.modulus(), Space::dual);
    return SymbolClass(contract(ej, c.canonical()));
}

inline bool is_unramified_at(const SymbolClass& c, std::uint32_t j) { return residue(c, j).is_zero(); }

/// Rank of the canonical multivectors as vectors over F_ell; equals the list
/// length iff the classes are independent.
inline std::size_t independence_rank(const std::vector<SymbolClass>& cs) {
    if (cs.empty()) return 0;
    const SymbolClass& first = cs.front();
    std::vector<FpRow> rows;
    for (const SymbolClass& c : cs) {
        if (c.degree() != first.degree() || c.num_vars() != first.num_vars() ||
            c.modulus() != first.modulus())
            throw input_error("independence_rank: mixed degrees or dimensions");
        rows.push_back(c.canonical().to_dense());
    }
    return rank_of_rows(rows, binomial(first.num_vars(), first.degree()), first.modulus());
}

/// The symbol map on pure dual wedges: a factor sum_j c_j v_j-dual becomes the
/// slot monomial prod_j (t_j^ell)^{c_j}, recorded over the generators
/// s_j = t_j^ell with coefficient lifts in {0,...,ell-1}.
inline MonomialSymbol phi_symbol(const Multivector& s) {
    if (s.space() != Space::dual) throw input_error("phi_symbol: input must be a dual multivector");
    PureCheck chk = is_pure_wedge(s);
    if (!chk.pure || chk.factors.size() != s.degree())
        throw input_error("phi_symbol: input is not a nonzero pure wedge of full degree");
    MonomialSymbol out(s.degree(), s.dim(), s.modulus());
    for (std::uint32_t i = 0; i < s.degree(); ++i) {
        FpRow c = chk.factors[i].coords();
        for (std::uint32_t j = 0; j < s.dim(); ++j) out.exponents[i][j] = c[j];
    }
    return out;
}

/// Rewrite a symbol, preserving its class, so that the first n-1 slots have
/// t_j-exponent 0: integer row operations plus, if a slot must move to the
/// last position, a swap paired with an inversion (both negate the class, so
/// the composite preserves it).
inline MonomialSymbol normalize_at_valuation(const MonomialSymbol& s, std::uint32_t j) {
    if (j < 1 || j > s.num_vars) throw input_error("normalize_at_valuation: variable index out of range");
    const std::uint32_t ell = s.modulus;
    const std::size_t col = j - 1;
    const std::uint32_t n = s.n_slots;
    if (n == 0) return s;

    auto res_at = [&](const MonomialSymbol& sym, std::uint32_t i) {
        return mod_reduce(sym.exponents[i][col], ell);
    };

    bool leading_clear = true;
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        if (res_at(s, i) != 0) leading_clear = false;
    if (leading_clear) return s;

    MonomialSymbol out = s;

    // move the last slot with nonzero t_j-valuation into the final position
    std::uint32_t pivot = n;  // sentinel
    for (std::uint32_t i = n; i-- > 0;) {
        if (res_at(out, i) != 0) {
            pivot = i;
            break;
        }
    }
    if (pivot != n - 1) {
        std::swap(out.exponents[pivot], out.exponents[n - 1]);
        for (auto& e : out.exponents[pivot]) e = -e;  // inversion pairs with the swap
    }

    const std::uint32_t rp = res_at(out, n - 1);
    const std::uint32_t rp_inv = mod_inv(rp, ell);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        std::uint32_t ri = res_at(out, i);
        if (ri == 0) continue;
        std::uint32_t c = mod_mul(ri, rp_inv, ell);
        for (std::uint32_t k = 0; k < s.num_vars; ++k)
            out.exponents[i][k] -= static_cast<std::int64_t>(c) * out.exponents[n - 1][k];
    }

    // clean the touched rows with ell-th power adjustments: exact zero in the
    // pivot column, canonical lifts elsewhere
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        for (std::uint32_t k = 0; k < s.num_vars; ++k)
            out.exponents[i][k] = mod_reduce(out.exponents[i][k], ell);
        out.exponents[i][col] = 0;
    }
    return out;
}

/// Restriction along k = C(t_1^ell,...) into k' = C(t_1,...): every generator
/// s_j becomes t_j^ell, so exponents multiply by ell and the class dies mod ell.
inline MonomialSymbol restrict_to_kprime(const MonomialSymbol& s) {
    MonomialSymbol out = s;
    for (auto& row : out.exponents)
        for (auto& e : row) e *= s.modulus;
    return out;
}

struct ParsedSymbol {
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> slots;  // (1-based var, exponent)
    std::string letter;
    std::uint32_t max_index = 0;

    MonomialSymbol to_symbol(std::uint32_t num_vars, std::uint32_t ell) const {
        if (num_vars < max_index)
            throw parse_error("symbol uses variable index " + std::to_string(max_index) +
                              " beyond declared count " + std::to_string(num_vars));
        MonomialSymbol s(static_cast<std::uint32_t>(slots.size()), num_vars, ell);
        for (std::size_t i = 0; i < slots.size(); ++i)
            for (const auto& [idx, e] : slots[i]) s.exponents[i][idx - 1] += e;
        return s;
    }
};

/// Parse `{t1*t3^2, t2}`: comma-separated monomial entries, `*` products,
/// integer `^` exponents, insignificant whitespace. One variable letter per
/// symbol; `1` denotes the empty monomial.
inline ParsedSymbol parse_symbol_text(const std::string& text) {
    ParsedSymbol out;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw parse_error(std::string("symbol syntax: expected '") + c + "' at offset " +
                              std::to_string(pos));
        ++pos;
    };
    auto parse_int = [&]() -> std::int64_t {
        skip_ws();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw parse_error("symbol syntax: expected integer at offset " + std::to_string(pos));
        std::int64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        return neg ? -v : v;
    };

    expect('{');
    skip_ws();
    if (pos < text.size() && text[pos] == '}') {
        ++pos;
        skip_ws();
        if (pos != text.size()) throw parse_error("symbol syntax: trailing characters");
        return out;
    }
    while (true) {
        std::vector<std::pair<std::uint32_t, std::int64_t>> slot;
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '1' &&
                (pos + 1 >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos + 1])))) {
                ++pos;  // literal 1, empty factor
            } else {
                std::string name;
                while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos])))
                    name += text[pos++];
                if (name.empty())
                    throw parse_error("symbol syntax: expected variable at offset " + std::to_string(pos));
                if (out.letter.empty())
                    out.letter = name;
                else if (out.letter != name)
                    throw parse_error("symbol syntax: mixed variable letters '" + out.letter + "' and '" +
                                      name + "'");
                std::int64_t idx = parse_int();
                if (idx < 1) throw parse_error("symbol syntax: variable index must be >= 1");
                std::int64_t e = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = parse_int();
                }
                slot.emplace_back(static_cast<std::uint32_t>(idx), e);
                out.max_index = std::max<std::uint32_t>(out.max_index, static_cast<std::uint32_t>(idx));
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        out.slots.push_back(std::move(slot));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    expect('}');
    skip_ws();
    if (pos != text.size()) throw parse_error("symbol syntax: trailing characters");
    if (out.letter.empty()) out.letter = "t";
    return out;
}

}  // namespace unram
