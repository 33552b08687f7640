#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oapoly/numeric.hpp"

namespace oapoly {

// Dense exact-rational matrix, row-major. Immutable-by-convention after
// construction in the projector code paths.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix identity(std::size_t d);
    static RatMatrix constant(std::size_t rows, std::size_t cols, const Rat& value);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const RatMatrix& other) const = default;

    RatMatrix operator+(const RatMatrix& other) const;
    RatMatrix operator-(const RatMatrix& other) const;
    RatMatrix operator*(const RatMatrix& other) const;  // exact; scaled-integer fast path
    RatMatrix scaled(const Rat& factor) const;
    RatMatrix transpose() const;

    bool is_zero() const;
    bool is_symmetric() const;
    bool is_antisymmetric() const;
    Rat trace() const;

    std::vector<Rat> apply(std::span<const Rat> v) const;  // matrix * column vector

    static RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

// Rank by fraction-free (Bareiss) Gaussian elimination; exact, no tolerances.
// Consumes the working copy. If pivot_rows is non-null it receives the indices
// (into the original row order) of a row basis, in elimination order.
int fraction_free_rank(std::vector<std::vector<Int>> m, std::vector<int>* pivot_rows = nullptr);

// Clears per-row denominators (rank-invariant) and runs fraction_free_rank.
int exact_rank(const RatMatrix& m);
int exact_rank(const std::vector<std::vector<Rat>>& rows);

std::vector<std::vector<Int>> clear_row_denominators(const std::vector<std::vector<Rat>>& rows);

}  // namespace oapoly
