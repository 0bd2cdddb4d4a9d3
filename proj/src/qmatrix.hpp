#pragma once

#include "field.hpp"
#include <optional>
#include <vector>

namespace gentle {

// Dense matrix with exact entries.  Everything in scope is well under
// 500 x 500, so no sparse engine.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, FVal(0)) {}

    static QMatrix identity(const Field& F, size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    FVal& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const FVal& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const;
    bool operator==(const QMatrix& o) const;

    QMatrix mul(const Field& F, const QMatrix& o) const;
    QMatrix add(const Field& F, const QMatrix& o) const;
    QMatrix scaled(const Field& F, const FVal& c) const;
    QMatrix transposed() const;
    QMatrix hstack(const QMatrix& o) const;

    void swap_rows(size_t i, size_t j);

private:
    size_t rows_, cols_;
    std::vector<FVal> a_;
};

// Row echelon data of a matrix, produced by exact Gaussian elimination.
struct Echelon {
    QMatrix rref;              // reduced row echelon form
    std::vector<size_t> pivots; // pivot column per nonzero row
    size_t rank() const { return pivots.size(); }
};

Echelon echelon_form(const Field& F, const QMatrix& m);

size_t rank(const Field& F, const QMatrix& m);

// Some x with A x = b, or nullopt if the system is inconsistent.
// b may have several columns; solves them simultaneously.
std::optional<QMatrix> solve_linear(const Field& F, const QMatrix& A, const QMatrix& b);

// Columns form a basis of ker(A); column count = cols - rank.
QMatrix kernel_basis(const Field& F, const QMatrix& A);

std::optional<QMatrix> inverse(const Field& F, const QMatrix& A);

} // namespace gentle
