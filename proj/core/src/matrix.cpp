#include "oapoly/matrix.hpp"

#include <algorithm>
#include <utility>

#include "oapoly/errors.hpp"

namespace oapoly {

RatMatrix RatMatrix::identity(std::size_t d) {
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::constant(std::size_t rows, std::size_t cols, const Rat& value) {
    RatMatrix m(rows, cols);
    for (auto& e : m.data_) e = value;
    return m;
}

RatMatrix RatMatrix::operator+(const RatMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix sum: shape mismatch");
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix difference: shape mismatch");
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

namespace {

// Common-denominator split: m = (1/den) * num with integer num.
std::pair<std::vector<Int>, Int> to_scaled_integers(const std::vector<Rat>& data) {
    Int den = 1;
    for (const auto& e : data) den = lcm(den, Int(denominator(e)));
    std::vector<Int> num(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        num[i] = numerator(data[i]) * (den / denominator(data[i]));
    return {std::move(num), std::move(den)};
}

}  // namespace

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
    if (cols_ != other.rows_) throw InputError("matrix product: shape mismatch");
    auto [a, da] = to_scaled_integers(data_);
    auto [b, db] = to_scaled_integers(other.data_);
    const std::size_t n = rows_, m = cols_, p = other.cols_;
    RatMatrix out(n, p);
    Int den = da * db;
    Int acc;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            acc = 0;
            const Int* arow = &a[i * m];
            for (std::size_t t = 0; t < m; ++t) {
                if (!arow[t].is_zero()) acc += arow[t] * b[t * p + j];
            }
            out(i, j) = Rat(acc, den);
        }
    }
    return out;
}

RatMatrix RatMatrix::scaled(const Rat& factor) const {
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
    return out;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

bool RatMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rat& e) { return e == 0; });
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool RatMatrix::is_antisymmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
}

Rat RatMatrix::trace() const {
    if (rows_ != cols_) throw InputError("trace: matrix not square");
    Rat t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

std::vector<Rat> RatMatrix::apply(std::span<const Rat> v) const {
    if (v.size() != cols_) throw InputError("matrix apply: size mismatch");
    std::vector<Rat> out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        Rat acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rat& e = (*this)(i, j);
            if (e != 0) acc += e * v[j];
        }
        out[i] = std::move(acc);
    }
    return out;
}

RatMatrix RatMatrix::kronecker(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Rat& f = a(ia, ja);
            if (f == 0) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
    return out;
}

int fraction_free_rank(std::vector<std::vector<Int>> m, std::vector<int>* pivot_rows) {
    if (pivot_rows) pivot_rows->clear();
    const std::size_t nrows = m.size();
    if (nrows == 0) return 0;
    const std::size_t ncols = m[0].size();
    std::vector<int> origin(nrows);
    for (std::size_t i = 0; i < nrows; ++i) origin[i] = static_cast<int>(i);

    int rank = 0;
    Int prev_pivot = 1;
    for (std::size_t col = 0; col < ncols && static_cast<std::size_t>(rank) < nrows; ++col) {
        // Smallest nonzero pivot keeps intermediate minors small.
        std::size_t pivot = nrows;
        for (std::size_t i = rank; i < nrows; ++i) {
            if (m[i][col].is_zero()) continue;
            if (pivot == nrows || abs(m[i][col]) < abs(m[pivot][col])) pivot = i;
        }
        if (pivot == nrows) continue;
        std::swap(m[rank], m[pivot]);
        std::swap(origin[rank], origin[pivot]);
        const Int& p = m[rank][col];
        // The update runs over every remaining row, also where f == 0: the
        // division by the previous pivot is what keeps entries integral.
        for (std::size_t i = rank + 1; i < nrows; ++i) {
            const Int f = m[i][col];
            for (std::size_t j = col + 1; j < ncols; ++j) {
                Int v = p * m[i][j] - f * m[rank][j];
                v /= prev_pivot;  // exact by the Bareiss identity
                m[i][j] = std::move(v);
            }
            m[i][col] = 0;
        }
        prev_pivot = p;
        if (pivot_rows) pivot_rows->push_back(origin[rank]);
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Int>> clear_row_denominators(const std::vector<std::vector<Rat>>& rows) {
    std::vector<std::vector<Int>> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Int den = 1;
        for (const auto& e : rows[i]) den = lcm(den, Int(denominator(e)));
        out[i].resize(rows[i].size());
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            out[i][j] = numerator(rows[i][j]) * (den / denominator(rows[i][j]));
    }
    return out;
}

int exact_rank(const std::vector<std::vector<Rat>>& rows) {
    return fraction_free_rank(clear_row_denominators(rows));
}

int exact_rank(const RatMatrix& m) {
    std::vector<std::vector<Rat>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows[i].resize(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    }
    return exact_rank(rows);
}

}  // namespace oapoly
