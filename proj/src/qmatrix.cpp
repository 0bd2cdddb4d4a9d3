#include "qmatrix.hpp"

namespace gentle {

QMatrix QMatrix::identity(const Field& F, size_t n) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!Field::is_zero(x)) return false;
    return true;
}

bool QMatrix::operator==(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (!Field::eq(a_[i], o.a_[i])) return false;
    return true;
}

QMatrix QMatrix::mul(const Field& F, const QMatrix& o) const {
    if (cols_ != o.rows_) throw domain_error("matrix product shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const FVal& x = at(i, k);
            if (Field::is_zero(x)) continue;
            for (size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = F.add(r.at(i, j), F.mul(x, o.at(k, j)));
        }
    return r;
}

QMatrix QMatrix::add(const Field& F, const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix sum shape mismatch");
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.add(a_[i], o.a_[i]);
    return r;
}

QMatrix QMatrix::scaled(const Field& F, const FVal& c) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.mul(a_[i], c);
    return r;
}

QMatrix QMatrix::transposed() const {
    QMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

QMatrix QMatrix::hstack(const QMatrix& o) const {
    if (rows_ != o.rows_) throw domain_error("hstack shape mismatch");
    QMatrix r(rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

void QMatrix::swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

Echelon echelon_form(const Field& F, const QMatrix& m) {
    Echelon e;
    e.rref = m;
    QMatrix& a = e.rref;
    size_t row = 0;
    for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        size_t piv = row;
        while (piv < a.rows() && Field::is_zero(a.at(piv, col))) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(row, piv);
        FVal pinv = F.inv(a.at(row, col));
        for (size_t c = col; c < a.cols(); ++c) a.at(row, c) = F.mul(a.at(row, c), pinv);
        for (size_t r = 0; r < a.rows(); ++r) {
            if (r == row || Field::is_zero(a.at(r, col))) continue;
            FVal f = a.at(r, col);
            for (size_t c = col; c < a.cols(); ++c)
                a.at(r, c) = F.sub(a.at(r, c), F.mul(f, a.at(row, c)));
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

size_t rank(const Field& F, const QMatrix& m) { return echelon_form(F, m).rank(); }

std::optional<QMatrix> solve_linear(const Field& F, const QMatrix& A, const QMatrix& b) {
    if (A.rows() != b.rows()) throw domain_error("solve_linear: dimension mismatch");
    Echelon e = echelon_form(F, A.hstack(b));
    // Inconsistent iff some pivot falls in the b-columns.
    for (size_t p : e.pivots)
        if (p >= A.cols()) return std::nullopt;
    QMatrix x(A.cols(), b.cols());
    for (size_t r = 0; r < e.pivots.size(); ++r)
        for (size_t j = 0; j < b.cols(); ++j)
            x.at(e.pivots[r], j) = e.rref.at(r, A.cols() + j);
    return x;
}

QMatrix kernel_basis(const Field& F, const QMatrix& A) {
    Echelon e = echelon_form(F, A);
    std::vector<bool> is_pivot(A.cols(), false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < A.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    QMatrix K(A.cols(), free_cols.size());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        size_t fc = free_cols[k];
        K.at(fc, k) = F.one();
        for (size_t r = 0; r < e.pivots.size(); ++r)
            K.at(e.pivots[r], k) = F.neg(e.rref.at(r, fc));
    }
    return K;
}

std::optional<QMatrix> inverse(const Field& F, const QMatrix& A) {
    if (A.rows() != A.cols()) return std::nullopt;
    auto x = solve_linear(F, A, QMatrix::identity(F, A.rows()));
    if (!x) return std::nullopt;
    if (rank(F, A) != A.rows()) return std::nullopt;
    return x;
}

} // namespace gentle
