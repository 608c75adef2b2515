#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unram/errors.hpp"
#include "unram/fp.hpp"
#include "unram/linalg.hpp"

namespace unram {

// Which algebra a multivector lives in: Lambda(V) or Lambda(V dual).
enum class Space : std::uint8_t { primal, dual };

inline Space dual_of(Space s) { return s == Space::primal ? Space::dual : Space::primal; }

inline std::string space_name(Space s) { return s == Space::primal ? "V" : "V*"; }

// Strictly increasing 1-based index tuple (j1 < ... < jp <= dim).
using IndexKey = std::vector<std::uint32_t>;

inline std::uint64_t binomial(std::uint32_t m, std::uint32_t p) {
    if (p > m) return 0;
    if (p > m - p) p = m - p;
    unsigned __int128 r = 1;
    for (std::uint32_t i = 1; i <= p; ++i) {
        r = r * (m - p + i) / i;
        if (r > (static_cast<unsigned __int128>(1) << 62))
            throw resource_error("binomial overflow for C(" + std::to_string(m) + "," + std::to_string(p) + ")",
                                 1ull << 62);
    }
    return static_cast<std::uint64_t>(r);
}

// All C(m,p) keys in lexicographic order.
inline std::vector<IndexKey> all_keys(std::uint32_t m, std::uint32_t p) {
    std::vector<IndexKey> out;
    if (p > m) return out;
    IndexKey key(p);
    for (std::uint32_t i = 0; i < p; ++i) key[i] = i + 1;
    while (true) {
        out.push_back(key);
        // advance to next combination
        std::int64_t i = static_cast<std::int64_t>(p) - 1;
        while (i >= 0 && key[static_cast<std::size_t>(i)] == m - (p - 1 - static_cast<std::uint32_t>(i))) --i;
        if (i < 0) break;
        ++key[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < p; ++j) key[j] = key[j - 1] + 1;
    }
    return out;
}

// Lexicographic rank of a key among all p-subsets of {1..m}.
inline std::size_t key_position(const IndexKey& key, std::uint32_t m) {
    const std::uint32_t p = static_cast<std::uint32_t>(key.size());
    std::uint64_t rank = 0;
    std::uint32_t prev = 0;
    for (std::uint32_t i = 0; i < p; ++i) {
        for (std::uint32_t v = prev + 1; v < key[i]; ++v) rank += binomial(m - v, p - 1 - i);
        prev = key[i];
    }
    return static_cast<std::size_t>(rank);
}

// Sign of the permutation that merges two disjoint increasing tuples into one
// increasing tuple: parity of the number of transposed pairs.
inline int merge_sign(const IndexKey& a, const IndexKey& b) {
    std::size_t inversions = 0;
    for (std::uint32_t x : a)
        for (std::uint32_t y : b)
            if (x > y) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

/// An element of Lambda^p(F_ell^m), stored sparsely: strictly increasing index
/// tuples mapped to nonzero residues. Map order is lexicographic, which fixes
/// the canonical term order everywhere (printing, dense vectors, echelon forms).
class Multivector {
public:
    Multivector() : Multivector(0, 1, 2, Space::primal) {}

    Multivector(std::uint32_t degree, std::uint32_t dim, std::uint32_t mod, Space space)
        : degree_(degree), dim_(dim), mod_(mod), space_(space) {
        if (!is_prime(mod)) throw input_error("Multivector: modulus is not prime");
    }

    static Multivector basis_element(const IndexKey& key, std::uint32_t dim, std::uint32_t mod, Space space) {
        Multivector v(static_cast<std::uint32_t>(key.size()), dim, mod, space);
        v.add_term(key, 1);
        return v;
    }

    // Degree-1 element from coordinates (index 0 of coords = basis vector 1).
    static Multivector from_coords(const FpRow& coords, std::uint32_t mod, Space space) {
        Multivector v(1, static_cast<std::uint32_t>(coords.size()), mod, space);
        for (std::uint32_t j = 0; j < coords.size(); ++j)
            if (coords[j] % mod != 0) v.add_term({j + 1}, coords[j] % mod);
        return v;
    }

    std::uint32_t degree() const { return degree_; }
    std::uint32_t dim() const { return dim_; }
    std::uint32_t modulus() const { return mod_; }
    Space space() const { return space_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<IndexKey, std::uint32_t>& terms() const { return terms_; }

    std::uint32_t coeff(const IndexKey& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(const IndexKey& key, std::int64_t c) {
        validate_key(key);
        std::uint32_t v = mod_add(coeff(key), mod_reduce(c, mod_), mod_);
        if (v == 0)
            terms_.erase(key);
        else
            terms_[key] = v;
    }

    Multivector operator+(const Multivector& o) const {
        require_same_shape(o);
        Multivector r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }

    Multivector operator-(const Multivector& o) const {
        require_same_shape(o);
        Multivector r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -static_cast<std::int64_t>(c));
        return r;
    }

    Multivector scaled(std::int64_t s) const {
        Multivector r(degree_, dim_, mod_, space_);
        std::uint32_t f = mod_reduce(s, mod_);
        for (const auto& [k, c] : terms_) r.add_term(k, mod_mul(c, f, mod_));
        return r;
    }

    Multivector operator-() const { return scaled(-1); }

    bool operator==(const Multivector& o) const {
        return degree_ == o.degree_ && dim_ == o.dim_ && mod_ == o.mod_ && space_ == o.space_ &&
               terms_ == o.terms_;
    }
    bool operator!=(const Multivector& o) const { return !(*this == o); }

    // Coefficient vector over all_keys(dim, degree), lex order.
    FpRow to_dense() const {
        FpRow row(binomial(dim_, degree_), 0);
        for (const auto& [k, c] : terms_) row[key_position(k, dim_)] = c;
        return row;
    }

    static Multivector from_dense(const FpRow& row, std::uint32_t degree, std::uint32_t dim,
                                  std::uint32_t mod, Space space) {
        Multivector v(degree, dim, mod, space);
        std::vector<IndexKey> keys = all_keys(dim, degree);
        if (row.size() != keys.size()) throw input_error("from_dense: length mismatch");
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (row[i] % mod != 0) v.add_term(keys[i], row[i] % mod);
        return v;
    }

    // For degree-1 elements: full coordinate row of length dim.
    FpRow coords() const {
        if (degree_ != 1) throw input_error("coords: degree-1 multivectors only");
        FpRow row(dim_, 0);
        for (const auto& [k, c] : terms_) row[k[0] - 1] = c;
        return row;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool multi_digit = dim_ > 9;
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            if (degree_ == 0) {
                out += std::to_string(c);
                continue;
            }
            if (c != 1) out += std::to_string(c) + "*";
            out += "e";
            for (std::size_t i = 0; i < k.size(); ++i) {
                if (i > 0 && multi_digit) out += "_";
                out += std::to_string(k[i]);
            }
            if (space_ == Space::dual) out += "^";
        }
        return out;
    }

    void require_same_shape(const Multivector& o) const {
        if (degree_ != o.degree_ || dim_ != o.dim_ || mod_ != o.mod_ || space_ != o.space_)
            throw input_error("multivector shape mismatch");
    }

private:
    void validate_key(const IndexKey& key) const {
        if (key.size() != degree_) throw input_error("key length != degree");
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] < 1 || key[i] > dim_) throw input_error("key index out of range");
            if (i > 0 && key[i] <= key[i - 1]) throw input_error("key not strictly increasing");
        }
    }

    std::uint32_t degree_;
    std::uint32_t dim_;
    std::uint32_t mod_;
    Space space_;
    std::map<IndexKey, std::uint32_t> terms_;
};

/// Exterior product. Degrees add; p + q > dim yields the zero multivector of
/// that degree. Merge signs are reduced mod ell.
inline Multivector wedge(const Multivector& a, const Multivector& b) {
    if (a.dim() != b.dim() || a.modulus() != b.modulus() || a.space() != b.space())
        throw input_error("wedge: dimension/tag mismatch");
    const std::uint32_t p = a.degree(), q = b.degree();
    Multivector r(p + q, a.dim(), a.modulus(), a.space());
    if (p + q > a.dim()) return r;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            IndexKey merged;
            merged.reserve(p + q);
            bool disjoint = true;
            std::set_union(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(merged));
            if (merged.size() != p + q) disjoint = false;
            if (!disjoint) continue;
            int sign = merge_sign(ka, kb);
            std::int64_t c = static_cast<std::int64_t>(mod_mul(ca, cb, a.modulus())) * sign;
            r.add_term(merged, c);
        }
    }
    return r;
}

inline Multivector wedge_all(const std::vector<Multivector>& factors, std::uint32_t degree,
                             std::uint32_t dim, std::uint32_t mod, Space space) {
    Multivector acc(0, dim, mod, space);
    acc.add_term({}, 1);
    for (const Multivector& f : factors) acc = wedge(acc, f);
    if (acc.degree() != degree) throw input_error("wedge_all: degree mismatch");
    return acc;
}

/// Pairing of Lambda^i(V dual) against Lambda^i(V) under the alternating-sum
/// identification: on index bases it is the Kronecker pairing.
inline Fp dual_pairing(const Multivector& f, const Multivector& w) {
    if (f.space() != Space::dual || w.space() != Space::primal)
        throw input_error("dual_pairing: expected (dual, primal) pair");
    if (f.degree() != w.degree() || f.dim() != w.dim() || f.modulus() != w.modulus())
        throw input_error("dual_pairing: degree/dim mismatch");
    std::uint32_t acc = 0;
    for (const auto& [k, c] : f.terms()) acc = mod_add(acc, mod_mul(c, w.coeff(k), f.modulus()), f.modulus());
    return Fp(acc, f.modulus());
}

/// Interior product: contract w by xi, where xi lives in the dual space of w.
/// Satisfies dual_pairing(eta, contract(xi, w)) == dual_pairing(wedge(xi, eta), w).
inline Multivector contract(const Multivector& xi, const Multivector& w) {
    if (xi.space() != dual_of(w.space())) throw input_error("contract: xi must live in the dual space");
    if (xi.dim() != w.dim() || xi.modulus() != w.modulus()) throw input_error("contract: dim mismatch");
    if (xi.degree() > w.degree()) throw input_error("contract: degree of xi exceeds degree of w");
    Multivector r(w.degree() - xi.degree(), w.dim(), w.modulus(), w.space());
    for (const auto& [kw, cw] : w.terms()) {
        for (const auto& [kx, cx] : xi.terms()) {
            if (!std::includes(kw.begin(), kw.end(), kx.begin(), kx.end())) continue;
            IndexKey rest;
            rest.reserve(kw.size() - kx.size());
            std::set_difference(kw.begin(), kw.end(), kx.begin(), kx.end(), std::back_inserter(rest));
            int sign = merge_sign(kx, rest);
            r.add_term(rest, static_cast<std::int64_t>(mod_mul(cx, cw, w.modulus())) * sign);
        }
    }
    return r;
}

}  // namespace unram
