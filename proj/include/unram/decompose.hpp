#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unram/multivector.hpp"
#include "unram/subspace.hpp"

namespace unram {

constexpr std::uint64_t kDefaultSdecCap = 1ull << 20;
constexpr std::uint64_t kDefaultPureSearchCap = 2'000'000;

/// {v in V : v wedge w = 0}. Nonzero iff w is divisible by a vector; for a
/// nonzero pure wedge of degree n the kernel has dimension exactly n.
inline Subspace divisibility_kernel(const Multivector& w) {
    const std::uint32_t m = w.dim();
    if (w.degree() + 1 > m || w.is_zero())
        return Subspace::full(1, m, w.modulus(), w.space());
    // column j = dense coordinates of e_{j+1} wedge w
    const std::uint64_t rows = binomial(m, w.degree() + 1);
    FpMatrix mat(rows, m, w.modulus());
    for (std::uint32_t j = 0; j < m; ++j) {
        Multivector ej = Multivector::basis_element({j + 1}, m, w.modulus(), w.space());
        FpRow col = wedge(ej, w).to_dense();
        for (std::size_t i = 0; i < col.size(); ++i) mat.at(i, j) = col[i];
    }
    std::vector<Multivector> gens;
    for (const FpRow& x : mat.nullspace()) gens.push_back(Multivector::from_coords(x, w.modulus(), w.space()));
    return Subspace::span(1, m, w.modulus(), w.space(), gens);
}

struct PureCheck {
    bool pure = false;
    // For a nonzero pure w of degree n: n degree-1 factors whose wedge equals w
    // exactly (the scalar is absorbed into the first factor). Empty for w = 0.
    std::vector<Multivector> factors;
    // When not pure: the basis key of Lambda^{n-1} whose contraction violates
    // the Pluecker relation.
    std::optional<IndexKey> plucker_witness;
};

/// Decomposability test via the Pluecker relations, valid over any prime field:
/// w is a wedge of degree-1 elements iff contract(xi, w) wedge w = 0 for xi
/// running over the standard basis of Lambda^{n-1} of the dual space.
inline PureCheck is_pure_wedge(const Multivector& w) {
    PureCheck res;
    if (w.is_zero() || w.degree() == 0) {
        res.pure = true;  // degenerate: the empty wedge
        return res;
    }
    if (w.degree() == 1) {
        res.pure = true;
        res.factors = {w};
        return res;
    }
    const Space dual_space = dual_of(w.space());
    for (const IndexKey& k : all_keys(w.dim(), w.degree() - 1)) {
        Multivector xi = Multivector::basis_element(k, w.dim(), w.modulus(), dual_space);
        if (!wedge(contract(xi, w), w).is_zero()) {
            res.pure = false;
            res.plucker_witness = k;
            return res;
        }
    }
    res.pure = true;
    Subspace ker = divisibility_kernel(w);
    if (ker.rank() != w.degree())
        throw input_error("is_pure_wedge: kernel rank inconsistent with Pluecker test");
    res.factors = ker.basis();
    // match the scalar: w = c * (b_1 wedge ... wedge b_n)
    Multivector prod = wedge_all(res.factors, w.degree(), w.dim(), w.modulus(), w.space());
    const auto& lead = *w.terms().begin();
    std::uint32_t c = mod_mul(lead.second, mod_inv(prod.coeff(lead.first), w.modulus()), w.modulus());
    res.factors[0] = res.factors[0].scaled(c);
    if (wedge_all(res.factors, w.degree(), w.dim(), w.modulus(), w.space()) != w)
        throw input_error("is_pure_wedge: factorization failed to reproduce input");
    return res;
}

/// Span of all elements of S divisible by a vector. Enumerates the whole of S,
/// so ell^{dim S} must stay within the cap.
inline Subspace s_dec(const Subspace& s, std::uint64_t cap = kDefaultSdecCap) {
    const std::uint32_t ell = s.modulus();
    const std::size_t k = s.rank();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (count > cap / ell)
            throw resource_error("s_dec: enumeration of " + std::to_string(k) +
                                     "-dimensional space over F_" + std::to_string(ell) + " exceeds cap",
                                 cap);
        count *= ell;
    }
    if (count > cap)
        throw resource_error("s_dec: enumeration of " + std::to_string(k) + "-dimensional space over F_" +
                                 std::to_string(ell) + " exceeds cap",
                             cap);
    std::vector<Multivector> divisible;
    std::vector<std::uint32_t> c(k, 0);
    while (true) {
        // advance odometer (last coordinate fastest); all-zero combination skipped
        std::size_t i = k;
        while (i > 0 && c[i - 1] == ell - 1) c[--i] = 0;
        if (i == 0) break;
        ++c[i - 1];
        Multivector sigma(s.degree(), s.dim(), s.modulus(), s.space());
        for (std::size_t j = 0; j < k; ++j)
            if (c[j] != 0) sigma = sigma + s.basis()[j].scaled(c[j]);
        if (!divisibility_kernel(sigma).is_zero()) divisible.push_back(sigma);
    }
    return Subspace::span(s.degree(), s.dim(), s.modulus(), s.space(), divisible);
}

struct PureBasisElement {
    Multivector element;
    std::vector<Multivector> factors;  // canonical factorization from is_pure_wedge

    PureBasisElement() = default;
    explicit PureBasisElement(Multivector e) : element(std::move(e)) {}
};

// Incremental row-echelon accumulator for greedy span building.
class SpanTracker {
public:
    explicit SpanTracker(std::uint32_t mod) : mod_(mod) {}

    std::size_t rank() const { return rows_.size(); }

    // Adds x to the span if independent of what is already there.
    bool try_add(FpRow x) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::uint32_t c = x[pivots_[i]];
            if (c == 0) continue;
            std::uint32_t f = mod_neg(c, mod_);
            for (std::size_t j = 0; j < x.size(); ++j)
                x[j] = mod_add(x[j], mod_mul(rows_[i][j], f, mod_), mod_);
        }
        std::size_t piv = x.size();
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0) {
                piv = j;
                break;
            }
        if (piv == x.size()) return false;
        std::uint32_t inv = mod_inv(x[piv], mod_);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = mod_mul(x[j], inv, mod_);
        rows_.push_back(std::move(x));
        pivots_.push_back(piv);
        return true;
    }

private:
    std::uint32_t mod_;
    std::vector<FpRow> rows_;
    std::vector<std::size_t> pivots_;
};

/// Deterministic search for a basis of W made of pure wedges. Order:
///   1. standard dual-basis wedges lying in W, by lexicographic key;
///   2. wedges of factors v_a + c v_b over paired disjoint index tuples;
///   3. wedges over the pool of all vectors supported on at most two indices.
/// Throws construction_error with the examined frontier size on exhaustion.
inline std::vector<PureBasisElement> pure_wedge_basis(const Subspace& w,
                                                      std::uint64_t candidate_cap = kDefaultPureSearchCap) {
    const std::uint32_t n = w.degree();
    const std::uint32_t m = w.dim();
    const std::uint32_t ell = w.modulus();
    const Space space = w.space();
    const std::size_t target = w.rank();

    std::vector<PureBasisElement> found;
    if (target == 0) return found;

    // membership test through the complement: v in W iff v pairs to zero with
    // every basis functional of W-perp (cheap when W has small codimension)
    Subspace w_perp = orthogonal_complement(w);
    auto member = [&](const Multivector& v) {
        for (const Multivector& g : w_perp.basis()) {
            const Multivector& f = space == Space::dual ? v : g;
            const Multivector& x = space == Space::dual ? g : v;
            if (!dual_pairing(f, x).is_zero()) return false;
        }
        return true;
    };

    SpanTracker tracker(ell);
    auto try_take = [&](const Multivector& v) {
        if (v.is_zero() || !member(v)) return false;
        if (!tracker.try_add(v.to_dense())) return false;
        PureBasisElement e(v);
        PureCheck chk = is_pure_wedge(v);
        if (!chk.pure) throw input_error("pure_wedge_basis: candidate failed purity recheck");
        e.factors = chk.factors;
        found.push_back(std::move(e));
        return true;
    };

    std::uint64_t frontier = 0;

    // stage 1: standard basis wedges
    for (const IndexKey& k : all_keys(m, n)) {
        ++frontier;
        if (try_take(Multivector::basis_element(k, m, ell, space)) && found.size() == target) return found;
    }

    // stage 2: factors v_{a_i} + c_i v_{b_i} with A, B disjoint increasing
    // tuples paired in order, coefficients in odometer order
    for (const IndexKey& a : all_keys(m, n)) {
        // complement of A
        std::vector<std::uint32_t> rest;
        for (std::uint32_t j = 1; j <= m; ++j)
            if (!std::binary_search(a.begin(), a.end(), j)) rest.push_back(j);
        if (rest.size() < n) continue;
        for (const IndexKey& bidx : all_keys(static_cast<std::uint32_t>(rest.size()), n)) {
            IndexKey b(n);
            for (std::uint32_t i = 0; i < n; ++i) b[i] = rest[bidx[i] - 1];
            std::vector<std::uint32_t> c(n, 0);
            while (true) {
                ++frontier;
                if (frontier > candidate_cap)
                    throw construction_error("pure_wedge_basis: candidate cap reached in stage 2",
                                             frontier);
                std::vector<Multivector> factors;
                factors.reserve(n);
                for (std::uint32_t i = 0; i < n; ++i) {
                    Multivector f = Multivector::basis_element({a[i]}, m, ell, space);
                    if (c[i] != 0) f.add_term({b[i]}, c[i]);
                    factors.push_back(std::move(f));
                }
                Multivector v = wedge_all(factors, n, m, ell, space);
                if (try_take(v) && found.size() == target) return found;
                // advance odometer
                std::size_t i = n;
                while (i > 0 && c[i - 1] == ell - 1) c[--i] = 0;
                if (i == 0) break;
                ++c[i - 1];
            }
        }
    }

    // stage 3: widen to all projective vectors supported on at most two
    // indices, wedged in combination order
    std::vector<Multivector> pool;
    for (std::uint32_t j = 1; j <= m; ++j) pool.push_back(Multivector::basis_element({j}, m, ell, space));
    for (std::uint32_t i = 1; i <= m; ++i)
        for (std::uint32_t j = i + 1; j <= m; ++j)
            for (std::uint32_t c = 1; c < ell; ++c) {
                Multivector v = Multivector::basis_element({i}, m, ell, space);
                v.add_term({j}, c);
                pool.push_back(std::move(v));
            }
    const std::size_t psz = pool.size();
    if (psz >= n) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        while (true) {
            ++frontier;
            if (frontier > candidate_cap)
                throw construction_error("pure_wedge_basis: candidate cap reached in stage 3",
                                         frontier);
            std::vector<Multivector> factors;
            for (std::size_t i : idx) factors.push_back(pool[i]);
            Multivector v = wedge_all(factors, n, m, ell, space);
            if (try_take(v) && found.size() == target) return found;
            std::size_t i = n;
            while (i > 0 && idx[i - 1] == psz - (n - i) - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    throw construction_error("pure_wedge_basis: no spanning set of pure wedges found", frontier);
}

}  // namespace unram
