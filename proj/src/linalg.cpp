#include "billiards/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace billiards::linalg {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, FieldScalar::zero(field)) {}

std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a.front().size();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[r], a[pivot]);
        const mpz_class p = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const mpz_class lead = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class num = p * a[i][j] - lead * a[r][j];
                mpz_class q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0) throw std::logic_error("bareiss_rank: inexact division");
                a[i][j] = q;
            }
            a[i][c] = 0;
        }
        prev = p;
        ++r;
    }
    return r;
}

std::size_t gauss_rank(const Matrix& a) {
    std::vector<std::vector<FieldScalar>> m(a.rows(), std::vector<FieldScalar>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < a.rows() && m[pivot][c].is_zero()) ++pivot;
        if (pivot == a.rows()) continue;
        std::swap(m[r], m[pivot]);
        const FieldScalar inv = m[r][c].inverse();
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (m[i][c].is_zero()) continue;
            const FieldScalar f = m[i][c] * inv;
            for (std::size_t j = c; j < a.cols(); ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

std::size_t rank(const Matrix& a) {
    if (!a.field().is_rational()) return gauss_rank(a);
    std::vector<std::vector<mpz_class>> ints(a.rows(), std::vector<mpz_class>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        mpz_class lcm = 1;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).value().get_den_mpz_t());
        }
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const mpq_class& v = a(i, j).value();
            ints[i][j] = v.get_num() * (lcm / v.get_den());
        }
    }
    return bareiss_rank(std::move(ints));
}

std::optional<std::vector<FieldScalar>> solve(const Matrix& a, const std::vector<FieldScalar>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
    const Field field = a.field();
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::vector<FieldScalar>> m(rows, std::vector<FieldScalar>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = a(i, j);
        m[i][cols] = b[i];
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        const FieldScalar inv = m[r][c].inverse();
        for (std::size_t j = c; j <= cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const FieldScalar f = m[i][c];
            for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (!m[i][cols].is_zero()) return std::nullopt;
    }
    std::vector<FieldScalar> x(cols, FieldScalar::zero(field));
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = m[i][cols];
    return x;
}

void axpy(SparseVector& y, const FieldScalar& a, const SparseVector& x) {
    if (a.is_zero()) return;
    for (const auto& [row, value] : x) {
        auto [it, inserted] = y.try_emplace(row, a * value);
        if (!inserted) {
            it->second += a * value;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

ImageReducer::Reduction ImageReducer::reduce(const SparseVector& v) const {
    Reduction out{v, {}};
    // Walk the rows downward; eliminating at pivot p only touches rows <= p.
    auto it = out.remainder.rbegin();
    while (it != out.remainder.rend()) {
        const std::size_t row = it->first;
        auto piv = pivots_.find(row);
        if (piv == pivots_.end()) {
            ++it;
            continue;
        }
        const FieldScalar factor = it->second / piv->second.column.rbegin()->second;
        axpy(out.remainder, -factor, piv->second.column);
        axpy(out.combination, factor, piv->second.combination);
        it = std::make_reverse_iterator(out.remainder.lower_bound(row));
    }
    return out;
}

bool ImageReducer::insert(SparseVector column, std::size_t source) {
    Reduction r = reduce(column);
    if (r.remainder.empty()) return false;
    // remainder = column - sum c_k col_k
    SparseVector combination;
    combination.emplace(source, FieldScalar::one(field_));
    axpy(combination, -FieldScalar::one(field_), r.combination);
    const std::size_t pivot_row = r.remainder.rbegin()->first;
    pivots_.emplace(pivot_row, Pivot{std::move(r.remainder), std::move(combination)});
    return true;
}

}  // namespace billiards::linalg
