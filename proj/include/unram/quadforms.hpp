#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unram/errors.hpp"
#include "unram/fp.hpp"
#include "unram/symbols.hpp"

namespace unram {

constexpr std::uint64_t kDefaultIsotropyCap = 10'000'000;

// A signed Laurent monomial in t_1..t_m: the unit coefficients of diagonal
// quadratic forms in the monomial model.
struct SignedMonomial {
    int sign = 1;  // +1 or -1
    std::vector<std::int64_t> exps;

    bool operator==(const SignedMonomial& o) const { return sign == o.sign && exps == o.exps; }

    std::string to_string(const std::string& letter = "t", std::int64_t scale = 1) const {
        std::string body;
        for (std::size_t j = 0; j < exps.size(); ++j) {
            std::int64_t e = exps[j] * scale;
            if (e == 0) continue;
            if (!body.empty()) body += "*";
            body += letter + std::to_string(j + 1);
            if (e != 1) body += "^" + std::to_string(e);
        }
        if (body.empty()) body = "1";
        return (sign < 0 ? "-" : "") + body;
    }
};

/// <c_1,...,c_k>: a diagonal quadratic form with signed monomial coefficients.
struct DiagonalForm {
    std::vector<SignedMonomial> coeffs;
    std::uint32_t num_vars = 0;  // number of t-variables, not form dimension

    std::size_t dimension() const { return coeffs.size(); }

    bool operator==(const DiagonalForm& o) const {
        return coeffs == o.coeffs && num_vars == o.num_vars;
    }
};

/// The projective quadric {q = 0} of a diagonal form built from a symbol.
struct QuadricEquation {
    DiagonalForm form;
    std::uint32_t variables = 0;      // 2^{n-1} + 1 for a length-n symbol
    std::uint64_t projective_dim = 0; // 2^{n-1} - 1
    MonomialSymbol symbol;            // the source symbol

    // "x0^2 - a1*x1^2 - a2*x2^2": deterministic variable order x0, x1, ...
    std::string polynomial_string(const std::string& letter = "t", std::int64_t scale = 1) const {
        std::string out;
        for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
            const SignedMonomial& c = form.coeffs[i];
            std::string mono = c.to_string(letter, scale);
            bool neg = !mono.empty() && mono[0] == '-';
            std::string body = neg ? mono.substr(1) : mono;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            if (body != "1") out += body + "*";
            out += "x" + std::to_string(i) + "^2";
        }
        return out;
    }
};

/// Coefficients of the Pfister form <<a_1,...,a_n>> = tensor of <1,-a_i>:
/// the subset T of {1..n}, enumerated in binary-counter order (bit i-1 is
/// entry i), contributes (-1)^{|T|} prod_{i in T} a_i.
inline DiagonalForm pfister_coefficients(const std::vector<std::vector<std::int64_t>>& entries,
                                         std::uint32_t num_vars) {
    const std::size_t n = entries.size();
    for (const auto& e : entries)
        if (e.size() != num_vars) throw input_error("pfister_coefficients: ragged entry");
    DiagonalForm form;
    form.num_vars = num_vars;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        SignedMonomial c;
        c.exps.assign(num_vars, 0);
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1ull << i)) {
                ++bits;
                for (std::uint32_t j = 0; j < num_vars; ++j) c.exps[j] += entries[i][j];
            }
        }
        c.sign = bits % 2 == 0 ? 1 : -1;
        form.coeffs.push_back(std::move(c));
    }
    return form;
}

inline DiagonalForm pfister_coefficients(const MonomialSymbol& s) {
    std::vector<std::vector<std::int64_t>> entries(s.exponents.begin(), s.exponents.end());
    return pfister_coefficients(entries, s.num_vars);
}

/// The quadric <<a_1,...,a_{n-1}>> = <a_n>, emitted as the zero set of the
/// orthogonal sum with <-a_n>: 2^{n-1} + 1 variables, projective dimension
/// 2^{n-1} - 1.
inline QuadricEquation small_pfister_quadric(const MonomialSymbol& s) {
    if (s.n_slots < 1) throw input_error("small_pfister_quadric: symbol must have length >= 1");
    std::vector<std::vector<std::int64_t>> head(s.exponents.begin(), s.exponents.end() - 1);
    QuadricEquation q;
    q.form = pfister_coefficients(head, s.num_vars);
    SignedMonomial last;
    last.sign = -1;
    last.exps = s.exponents.back();
    q.form.coeffs.push_back(std::move(last));
    q.variables = static_cast<std::uint32_t>(q.form.coeffs.size());
    q.projective_dim = (1ull << (s.n_slots - 1)) - 1;
    q.symbol = s;
    return q;
}

/// Evaluate each signed monomial at a point of (F_p^*)^m.
inline std::vector<std::uint32_t> specialize(const DiagonalForm& form,
                                             const std::vector<std::uint32_t>& point, std::uint32_t p) {
    if (!is_prime(p)) throw input_error("specialize: p is not prime");
    if (point.size() != form.num_vars) throw input_error("specialize: point arity mismatch");
    for (std::uint32_t x : point)
        if (x % p == 0) throw input_error("specialize: point coordinates must be nonzero mod p");
    std::vector<std::uint32_t> out;
    out.reserve(form.coeffs.size());
    for (const SignedMonomial& c : form.coeffs) {
        std::uint32_t v = 1 % p;
        for (std::size_t j = 0; j < c.exps.size(); ++j) {
            // negative exponents through Fermat: x^(p-1) = 1 for x != 0
            std::uint32_t e = p > 2 ? mod_reduce(c.exps[j], p - 1) : 0;
            v = mod_mul(v, mod_pow(point[j] % p, e, p), p);
        }
        if (c.sign < 0) v = mod_neg(v, p);
        out.push_back(v);
    }
    return out;
}

/// Exhaustive deterministic isotropy search: the lexicographically first
/// nonzero zero of sum c_i x_i^2 over F_p, or nullopt if anisotropic.
inline std::optional<std::vector<std::uint32_t>> isotropy_bruteforce(
    const std::vector<std::uint32_t>& coeffs, std::uint32_t p,
    std::uint64_t cap = kDefaultIsotropyCap) {
    if (!is_prime(p)) throw input_error("isotropy_bruteforce: p is not prime");
    const std::size_t k = coeffs.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > cap / p)
            throw resource_error("isotropy_bruteforce: p^k exceeds cap", cap);
        total *= p;
    }
    if (total > cap) throw resource_error("isotropy_bruteforce: p^k exceeds cap", cap);
    if (k == 0) return std::nullopt;

    std::vector<std::uint32_t> sq(p);
    for (std::uint32_t x = 0; x < p; ++x) sq[x] = mod_mul(x, x, p);

    std::vector<std::uint32_t> x(k, 0);
    while (true) {
        // advance first: skips the all-zero vector
        std::size_t i = k;
        while (i > 0 && x[i - 1] == p - 1) x[--i] = 0;
        if (i == 0) break;
        ++x[i - 1];
        std::uint32_t acc = 0;
        for (std::size_t j = 0; j < k; ++j)
            acc = mod_add(acc, mod_mul(coeffs[j] % p, sq[x[j]], p), p);
        if (acc == 0) return x;
    }
    return std::nullopt;
}

}  // namespace unram
