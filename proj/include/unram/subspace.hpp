#pragma once

#include <cstdint>
#include <vector>

#include "unram/linalg.hpp"
#include "unram/multivector.hpp"

namespace unram {

/// A subspace of Lambda^p(F_ell^m), stored as a reduced row echelon basis over
/// the lexicographic key order. The echelon form is the canonical
/// representative: two Subspace values are equal iff they are the same subspace.
class Subspace {
public:
    Subspace() : Subspace(0, 1, 2, Space::primal) {}

    Subspace(std::uint32_t degree, std::uint32_t dim, std::uint32_t mod, Space space)
        : degree_(degree), dim_(dim), mod_(mod), space_(space) {}

    static Subspace span(std::uint32_t degree, std::uint32_t dim, std::uint32_t mod, Space space,
                         const std::vector<Multivector>& generators) {
        Subspace s(degree, dim, mod, space);
        if (generators.empty()) return s;
        std::vector<FpRow> rows;
        rows.reserve(generators.size());
        for (const Multivector& g : generators) {
            if (g.degree() != degree || g.dim() != dim || g.modulus() != mod || g.space() != space)
                throw input_error("Subspace::span: generator shape mismatch");
            rows.push_back(g.to_dense());
        }
        FpMatrix m = FpMatrix::from_rows(rows, binomial(dim, degree), mod);
        s.adopt_rref(m);
        return s;
    }

    static Subspace span_of(const std::vector<Multivector>& generators) {
        if (generators.empty()) throw input_error("Subspace::span_of: need at least one generator");
        const Multivector& g = generators.front();
        return span(g.degree(), g.dim(), g.modulus(), g.space(), generators);
    }

    // The whole of Lambda^degree.
    static Subspace full(std::uint32_t degree, std::uint32_t dim, std::uint32_t mod, Space space) {
        std::vector<Multivector> gens;
        for (const IndexKey& k : all_keys(dim, degree))
            gens.push_back(Multivector::basis_element(k, dim, mod, space));
        return span(degree, dim, mod, space, gens);
    }

    std::uint32_t degree() const { return degree_; }
    std::uint32_t dim() const { return dim_; }
    std::uint32_t modulus() const { return mod_; }
    Space space() const { return space_; }
    std::uint64_t ambient_dim() const { return binomial(dim_, degree_); }

    std::size_t rank() const { return rows_.size(); }
    bool is_zero() const { return rows_.empty(); }

    const std::vector<Multivector>& basis() const { return basis_; }
    const std::vector<FpRow>& dense_rows() const { return rows_; }

    bool contains(const Multivector& v) const {
        if (v.degree() != degree_ || v.dim() != dim_ || v.modulus() != mod_ || v.space() != space_)
            return false;
        FpRow x = reduce(v.to_dense());
        for (std::uint32_t c : x)
            if (c != 0) return false;
        return true;
    }

    // Residue of x after reduction against the echelon basis.
    FpRow reduce(FpRow x) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::uint32_t c = x[pivots_[i]];
            if (c == 0) continue;
            std::uint32_t f = mod_neg(c, mod_);
            for (std::size_t j = 0; j < x.size(); ++j)
                x[j] = mod_add(x[j], mod_mul(rows_[i][j], f, mod_), mod_);
        }
        return x;
    }

    // True if v added to the span would enlarge it.
    bool extends(const Multivector& v) const { return !contains(v) && !v.is_zero(); }

    bool operator==(const Subspace& o) const {
        return degree_ == o.degree_ && dim_ == o.dim_ && mod_ == o.mod_ && space_ == o.space_ &&
               rows_ == o.rows_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    void adopt_rref(FpMatrix& m) {
        pivots_ = m.rref();
        rows_.clear();
        basis_.clear();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            rows_.push_back(m.row(i));
            basis_.push_back(Multivector::from_dense(rows_.back(), degree_, dim_, mod_, space_));
        }
    }

    std::uint32_t degree_;
    std::uint32_t dim_;
    std::uint32_t mod_;
    Space space_;
    std::vector<FpRow> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Multivector> basis_;
};

/// All functionals vanishing on S: {f in Lambda^p of the dual space :
/// <f, s> = 0 for every s in S}. dim S + dim result = C(m, p).
inline Subspace orthogonal_complement(const Subspace& s) {
    const std::uint64_t n = s.ambient_dim();
    const Space out_space = dual_of(s.space());
    std::vector<Multivector> gens;
    if (s.rank() == 0) {
        return Subspace::full(s.degree(), s.dim(), s.modulus(), out_space);
    }
    FpMatrix m = FpMatrix::from_rows(s.dense_rows(), n, s.modulus());
    for (const FpRow& x : m.nullspace())
        gens.push_back(Multivector::from_dense(x, s.degree(), s.dim(), s.modulus(), out_space));
    return Subspace::span(s.degree(), s.dim(), s.modulus(), out_space, gens);
}

}  // namespace unram
