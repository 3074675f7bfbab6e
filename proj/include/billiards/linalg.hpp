#pragma once

#include "billiards/field.hpp"

#include <map>
#include <optional>
#include <vector>

namespace billiards::linalg {

using dga::Field;
using dga::FieldScalar;

/// Dense row-major matrix over a Field.
class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    FieldScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<FieldScalar> data_;
};

/// Rank by fraction-free (Bareiss) elimination on an integer matrix.
std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> rows);

/// Rank over the matrix's field: rows are cleared of denominators and run
/// through Bareiss over Q; ordinary elimination over F_p.
std::size_t rank(const Matrix& a);

/// Rank by plain Gauss-Jordan elimination in the field.  Slower over Q than
/// rank(); kept as an independent route.
std::size_t gauss_rank(const Matrix& a);

/// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<FieldScalar>> solve(const Matrix& a, const std::vector<FieldScalar>& b);

/// Sparse column vector keyed by row index.
using SparseVector = std::map<std::size_t, FieldScalar>;

/**
 * Echelon basis of the span of a set of columns, built incrementally.  Each
 * stored column has a distinct pivot (its largest nonzero row) and remembers
 * which combination of the inserted columns produced it, so a reduction can
 * report a preimage.
 */
class ImageReducer {
public:
    explicit ImageReducer(Field field) : field_(field) {}

    /// Adds column number `source` to the spanning set.  Returns true if it
    /// increased the rank.
    bool insert(SparseVector column, std::size_t source);

    struct Reduction {
        /// Unique remainder with no entries at pivot rows.
        SparseVector remainder;
        /// Coefficients c_k with  v = remainder + sum_k c_k * column_k.
        SparseVector combination;
    };

    Reduction reduce(const SparseVector& v) const;

    std::size_t rank() const { return pivots_.size(); }

private:
    struct Pivot {
        SparseVector column;
        SparseVector combination;
    };
    Field field_;
    std::map<std::size_t, Pivot> pivots_;
};

void axpy(SparseVector& y, const FieldScalar& a, const SparseVector& x);

}  // namespace billiards::linalg
