#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spfem {

/// Compressed sparse row matrix. Column indices are sorted and unique per row.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> row_offsets,
                 std::vector<std::size_t> col_indices, std::vector<double> values);

    std::size_t rows() const { return n_rows_; }
    std::size_t cols() const { return n_cols_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const std::size_t> row_offsets() const { return row_offsets_; }
    std::span<const std::size_t> col_indices() const { return col_indices_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Entry (i, j), zero when not stored.
    double at(std::size_t i, std::size_t j) const;

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> operator*(std::span<const double> x) const;
    /// y = A^T x without forming the transpose.
    std::vector<double> multiply_transpose(std::span<const double> x) const;

    SparseMatrix transpose() const;
    double max_abs() const;
    /// Dense row-major copy, for small systems only.
    std::vector<double> to_dense() const;

private:
    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<std::size_t> row_offsets_{0};
    std::vector<std::size_t> col_indices_;
    std::vector<double> values_;
};

/// Accumulates (row, col, value) contributions; duplicates are summed in
/// insertion order so the result is reproducible.
class TripletBuilder {
public:
    TripletBuilder(std::size_t n_rows, std::size_t n_cols) : n_rows_(n_rows), n_cols_(n_cols) {}

    void reserve(std::size_t n) { entries_.reserve(n); }
    void add(std::size_t row, std::size_t col, double value);
    SparseMatrix build() const;

private:
    struct Entry {
        std::size_t row, col;
        double value;
    };
    std::size_t n_rows_, n_cols_;
    std::vector<Entry> entries_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace spfem
