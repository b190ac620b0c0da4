#include "qlm/matrix.hpp"

#include <cassert>

#include "qlm/errors.hpp"

namespace qlm {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t nr = rows.size();
    std::size_t nc = nr ? rows[0].size() : 0;
    QMatrix m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        assert(rows[r].size() == nc);
        for (std::size_t c = 0; c < nc; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
    if (cols_ != other.rows_) throw InvariantError("matrix product shape mismatch");
    QMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Rational& b = other.at(k, j);
                if (b != 0) out.at(i, j) += a * b;
            }
        }
    return out;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvariantError("matrix sum shape mismatch");
    QMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

QMatrix QMatrix::operator-(const QMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvariantError("matrix difference shape mismatch");
    QMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

bool QMatrix::operator==(const QMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool QMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

QMatrix QMatrix::transposed() const {
    QMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw InvariantError("matrix apply shape mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (at(r, c) != 0 && v[c] != 0) out[r] += at(r, c) * v[c];
    return out;
}

QMatrix QMatrix::augmented(const QMatrix& other) const {
    if (rows_ != other.rows_) throw InvariantError("augment row mismatch");
    QMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c) out.at(r, cols_ + c) = other.at(r, c);
    }
    return out;
}

std::vector<Rational> QMatrix::col(std::size_t c) const {
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

namespace {

// Pivot preference: smallest denominator, then smallest |numerator|.
bool better_pivot(const Rational& a, const Rational& b) {
    Integer da = rat_den(a), db = rat_den(b);
    if (da != db) return da < db;
    Integer na = rat_num(a), nb = rat_num(b);
    if (na < 0) na = -na;
    if (nb < 0) nb = -nb;
    return na < nb;
}

// RREF in place over the leading `lead_cols` columns (trailing columns, when
// present, just ride along as augmented data).
void rref_in_place(QMatrix& m, std::size_t lead_cols, std::vector<std::size_t>& pivots) {
    std::size_t pr = 0;
    for (std::size_t c = 0; c < lead_cols && pr < m.rows(); ++c) {
        std::size_t best = m.rows();
        for (std::size_t r = pr; r < m.rows(); ++r) {
            if (m.at(r, c) == 0) continue;
            if (best == m.rows() || better_pivot(m.at(r, c), m.at(best, c))) best = r;
        }
        if (best == m.rows()) continue;
        if (best != pr)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(best, j));
        Rational inv = Rational(1) / m.at(pr, c);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(pr, j) != 0) m.at(pr, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pr || m.at(r, c) == 0) continue;
            Rational f = m.at(r, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m.at(pr, j) != 0) m.at(r, j) -= f * m.at(pr, j);
        }
        pivots.push_back(c);
        ++pr;
    }
}

}  // namespace

Reduction reduce(const QMatrix& m) {
    Reduction out;
    out.rref = m;
    rref_in_place(out.rref, m.cols(), out.pivot_cols);
    out.rank = out.pivot_cols.size();
    // Kernel: one vector per free column.
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : out.pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < out.rank; ++i) v[out.pivot_cols[i]] = -out.rref.at(i, f);
        out.kernel_basis.push_back(std::move(v));
    }
    for (auto c : out.pivot_cols) out.image_basis.push_back(m.col(c));
    return out;
}

std::size_t rank(const QMatrix& m) {
    QMatrix w = m;
    std::vector<std::size_t> pivots;
    rref_in_place(w, m.cols(), pivots);
    return pivots.size();
}

std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b) {
    LinearSolver s(m);
    return s.solve(b);
}

LinearSolver::LinearSolver(const QMatrix& m) : m_(m) {
    // Reduce [m | I]; the identity block records the row transform T with
    // T m = rref(m), replayed on each right-hand side.
    QMatrix aug = m.augmented(QMatrix::identity(m.rows()));
    std::vector<std::size_t> pivots;
    rref_in_place(aug, m.cols(), pivots);
    red_.rank = pivots.size();
    red_.pivot_cols = pivots;
    red_.rref = QMatrix(m.rows(), m.cols());
    elim_.assign(m.rows(), std::vector<Rational>(m.rows()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) red_.rref.at(r, c) = aug.at(r, c);
        for (std::size_t c = 0; c < m.rows(); ++c) elim_[r][c] = aug.at(r, m.cols() + c);
    }
}

std::optional<std::vector<Rational>> LinearSolver::solve(const std::vector<Rational>& b) const {
    if (b.size() != m_.rows()) throw InvariantError("solver rhs size mismatch");
    std::vector<Rational> c(m_.rows());
    for (std::size_t r = 0; r < m_.rows(); ++r)
        for (std::size_t j = 0; j < m_.rows(); ++j)
            if (elim_[r][j] != 0 && b[j] != 0) c[r] += elim_[r][j] * b[j];
    for (std::size_t r = red_.rank; r < m_.rows(); ++r)
        if (c[r] != 0) return std::nullopt;
    std::vector<Rational> x(m_.cols());
    for (std::size_t i = 0; i < red_.rank; ++i) x[red_.pivot_cols[i]] = c[i];
    return x;
}

}  // namespace qlm
