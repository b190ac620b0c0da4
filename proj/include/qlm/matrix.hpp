#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qlm/rational.hpp"

namespace qlm {

// Dense matrix over the rationals. Everything downstream (homology ranks,
// quasi-isomorphism tests, barcode ranks) reduces to this.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    QMatrix operator*(const QMatrix& other) const;
    QMatrix operator+(const QMatrix& other) const;
    QMatrix operator-(const QMatrix& other) const;
    bool operator==(const QMatrix& other) const;

    bool is_zero() const;
    QMatrix transposed() const;

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    // Horizontal concatenation [this | other].
    QMatrix augmented(const QMatrix& other) const;

    std::vector<Rational> col(std::size_t c) const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

// Row-echelon data from exact Gaussian elimination. Pivot rows are chosen by
// smallest denominator-then-numerator magnitude to limit coefficient growth;
// columns are processed left to right, so output bases are deterministic.
struct Reduction {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;   // ascending
    QMatrix rref;                          // reduced row echelon form
    std::vector<std::vector<Rational>> kernel_basis;  // null space, one vector per free column
    std::vector<std::vector<Rational>> image_basis;   // pivot columns of the input
};

Reduction reduce(const QMatrix& m);

std::size_t rank(const QMatrix& m);

// Solves m x = b exactly; nullopt when inconsistent. Free variables are set
// to zero, so the returned solution is deterministic.
std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b);

// Precomputed solver for repeated right-hand sides against a fixed matrix.
class LinearSolver {
public:
    explicit LinearSolver(const QMatrix& m);
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;
    std::size_t rank() const { return red_.rank; }

private:
    QMatrix m_;
    Reduction red_;
    // Row operations are replayed on each rhs via the recorded elimination.
    std::vector<std::vector<Rational>> elim_;  // rows of [I | 0]-style transform
};

}  // namespace qlm
