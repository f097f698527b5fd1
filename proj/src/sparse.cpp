#include "spfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spfem {

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols,
                           std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices, std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
    if (row_offsets_.size() != n_rows_ + 1 || row_offsets_.front() != 0 ||
        row_offsets_.back() != col_indices_.size() || col_indices_.size() != values_.size()) {
        throw std::invalid_argument("SparseMatrix: inconsistent CSR arrays");
    }
    for (std::size_t i = 0; i < n_rows_; ++i) {
        if (row_offsets_[i] > row_offsets_[i + 1]) {
            throw std::invalid_argument("SparseMatrix: row offsets not monotone");
        }
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            if (col_indices_[k] >= n_cols_ ||
                (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1])) {
                throw std::invalid_argument("SparseMatrix: column indices unsorted or out of range");
            }
        }
    }
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
    const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
    const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != n_cols_ || y.size() != n_rows_) {
        throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
    }
    for (std::size_t i = 0; i < n_rows_; ++i) {
        double s = 0.0;
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            s += values_[k] * x[col_indices_[k]];
        }
        y[i] = s;
    }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
    std::vector<double> y(n_rows_);
    multiply(x, y);
    return y;
}

std::vector<double> SparseMatrix::multiply_transpose(std::span<const double> x) const {
    if (x.size() != n_rows_) {
        throw std::invalid_argument("SparseMatrix::multiply_transpose: dimension mismatch");
    }
    std::vector<double> y(n_cols_, 0.0);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            y[col_indices_[k]] += values_[k] * x[i];
        }
    }
    return y;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<std::size_t> offsets(n_cols_ + 1, 0);
    for (std::size_t c : col_indices_) ++offsets[c + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::size_t> cols(nnz());
    std::vector<double> vals(nnz());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    // Row-major sweep keeps the new column indices sorted.
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            const std::size_t dst = fill[col_indices_[k]]++;
            cols[dst] = i;
            vals[dst] = values_[k];
        }
    }
    return SparseMatrix(n_cols_, n_rows_, std::move(offsets), std::move(cols), std::move(vals));
}

double SparseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> SparseMatrix::to_dense() const {
    std::vector<double> dense(n_rows_ * n_cols_, 0.0);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            dense[i * n_cols_ + col_indices_[k]] = values_[k];
        }
    }
    return dense;
}

void TripletBuilder::add(std::size_t row, std::size_t col, double value) {
    if (row >= n_rows_ || col >= n_cols_) {
        throw std::out_of_range("TripletBuilder::add: index out of range");
    }
    entries_.push_back({row, col, value});
}

SparseMatrix TripletBuilder::build() const {
    std::vector<std::size_t> order(entries_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
        const Entry& ea = entries_[a];
        const Entry& eb = entries_[b];
        return ea.row != eb.row ? ea.row < eb.row : ea.col < eb.col;
    });

    std::vector<std::size_t> offsets(n_rows_ + 1, 0);
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    cols.reserve(entries_.size() / 2);
    vals.reserve(entries_.size() / 2);
    std::size_t prev_row = n_rows_, prev_col = n_cols_;
    for (std::size_t idx : order) {
        const Entry& e = entries_[idx];
        if (e.row == prev_row && e.col == prev_col) {
            vals.back() += e.value;
            continue;
        }
        cols.push_back(e.col);
        vals.push_back(e.value);
        ++offsets[e.row + 1];
        prev_row = e.row;
        prev_col = e.col;
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    for (double v : vals) {
        if (!std::isfinite(v)) throw std::runtime_error("TripletBuilder::build: non-finite entry");
    }
    return SparseMatrix(n_rows_, n_cols_, std::move(offsets), std::move(cols), std::move(vals));
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace spfem
