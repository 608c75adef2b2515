#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "unram/errors.hpp"
#include "unram/fp.hpp"

namespace unram {

using FpRow = std::vector<std::uint32_t>;

/// Dense matrix over F_ell, row major. The workhorse behind every echelon
/// form, rank and kernel computation in the library.
class FpMatrix {
public:
    FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t mod)
        : rows_(rows), cols_(cols), mod_(mod), data_(rows * cols, 0) {
        if (!is_prime(mod)) throw input_error("FpMatrix: modulus is not prime");
    }

    static FpMatrix from_rows(const std::vector<FpRow>& rows, std::size_t cols, std::uint32_t mod) {
        FpMatrix m(rows.size(), cols, mod);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw input_error("FpMatrix: ragged row");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j] % mod;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return mod_; }

    std::uint32_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    FpRow row(std::size_t i) const {
        return FpRow(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    // In-place reduced row echelon form. Returns the pivot column of each
    // surviving row; zero rows are dropped, so rows() == rank afterwards.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && at(p, c) == 0) ++p;
            if (p == rows_) continue;
            swap_rows(p, r);
            scale_row(r, mod_inv(at(r, c), mod_));
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i != r && at(i, c) != 0) add_multiple(i, r, mod_neg(at(i, c), mod_));
            }
            pivots.push_back(c);
            ++r;
        }
        rows_ = r;
        data_.resize(rows_ * cols_);
        return pivots;
    }

    std::size_t rank() const {
        FpMatrix copy = *this;
        return copy.rref().size();
    }

    // Basis of the right null space {x : M x = 0}, one vector per row,
    // in the canonical order induced by the free columns.
    std::vector<FpRow> nullspace() const {
        FpMatrix red = *this;
        std::vector<std::size_t> pivots = red.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots) is_pivot[c] = true;

        std::vector<FpRow> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            FpRow x(cols_, 0);
            x[free] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                x[pivots[i]] = mod_neg(red.at(i, free), mod_);
            basis.push_back(std::move(x));
        }
        return basis;
    }

private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    void scale_row(std::size_t i, std::uint32_t s) {
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = mod_mul(at(i, j), s, mod_);
    }

    // row[i] += s * row[src]
    void add_multiple(std::size_t i, std::size_t src, std::uint32_t s) {
        for (std::size_t j = 0; j < cols_; ++j)
            at(i, j) = mod_add(at(i, j), mod_mul(at(src, j), s, mod_), mod_);
    }

    std::size_t rows_;
    std::size_t cols_;
    std::uint32_t mod_;
    std::vector<std::uint32_t> data_;
};

inline std::size_t rank_of_rows(const std::vector<FpRow>& rows, std::size_t cols, std::uint32_t mod) {
    if (rows.empty()) return 0;
    FpMatrix m = FpMatrix::from_rows(rows, cols, mod);
    return m.rref().size();
}

}  // namespace unram
