#include "folforge/linalg.hpp"

#include <algorithm>

namespace folforge {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    int r = (int)rows.size();
    int c = r == 0 ? 0 : (int)rows[0].size();
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if ((int)rows[i].size() != c) fail("BadMatrix", "ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) fail("SizeMismatch", "matrix addition");
    Matrix m(r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) fail("SizeMismatch", "matrix subtraction");
    Matrix m(r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (c_ != o.r_) fail("SizeMismatch", "matrix product");
    Matrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.c_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
        }
    return m;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix m(r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * c;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

bool Matrix::is_zero() const {
    for (auto& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

Vec Matrix::row(int i) const {
    Vec v(c_);
    for (int j = 0; j < c_; ++j) v[j] = at(i, j);
    return v;
}

Vec Matrix::apply(const Vec& x) const {
    if ((int)x.size() != c_) fail("SizeMismatch", "matrix apply");
    Vec y(r_);
    for (int i = 0; i < r_; ++i) {
        Scalar s(0);
        for (int j = 0; j < c_; ++j)
            if (!at(i, j).is_zero()) s += at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

namespace {

// clear denominators row by row so elimination stays over Z[i]
void integerize_row(Vec& row) {
    mpz_class l(1);
    for (auto& s : row) {
        mpz_class d1 = s.re().get_den(), d2 = s.im().get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d1.get_mpz_t());
        l = l / g * d1;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d2.get_mpz_t());
        l = l / g * d2;
    }
    if (l == 1) return;
    Scalar f{Rat(l)};
    for (auto& s : row) s = s * f;
}

struct Echelon {
    std::vector<Vec> rows; // echelon rows (fraction-free, integral)
    std::vector<int> pivot_cols;
};

Echelon bareiss(const Matrix& m) {
    std::vector<Vec> a;
    a.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        Vec r = m.row(i);
        integerize_row(r);
        a.push_back(std::move(r));
    }
    const int nc = m.cols();
    Echelon e;
    Scalar prev(1);
    size_t top = 0;
    for (int col = 0; col < nc && top < a.size(); ++col) {
        // pivot: smallest numerator bit length among nonzero entries
        size_t best = a.size();
        size_t best_bits = 0;
        for (size_t i = top; i < a.size(); ++i) {
            if (a[i][col].is_zero()) continue;
            size_t bits = a[i][col].bit_size();
            if (best == a.size() || bits < best_bits) {
                best = i;
                best_bits = bits;
            }
        }
        if (best == a.size()) continue;
        std::swap(a[top], a[best]);
        const Vec piv = a[top];
        for (size_t i = top + 1; i < a.size(); ++i) {
            if (a[i][col].is_zero()) {
                // still rescale per Bareiss so later exact divisions hold
                for (int j = col; j < nc; ++j)
                    a[i][j] = (a[i][j] * piv[col]) / prev;
                continue;
            }
            Scalar f = a[i][col];
            for (int j = col; j < nc; ++j)
                a[i][j] = (a[i][j] * piv[col] - piv[j] * f) / prev;
        }
        prev = piv[col];
        e.pivot_cols.push_back(col);
        ++top;
    }
    a.resize(top);
    e.rows = std::move(a);
    return e;
}

// back substitution for U x = 0 with x fixed at the free columns
Vec back_substitute(const Echelon& e, int ncols, const Vec& free_values,
                    const std::vector<int>& free_cols) {
    Vec x(ncols, Scalar(0));
    for (size_t k = 0; k < free_cols.size(); ++k) x[free_cols[k]] = free_values[k];
    for (int i = (int)e.rows.size() - 1; i >= 0; --i) {
        int pc = e.pivot_cols[i];
        Scalar s(0);
        for (int j = pc + 1; j < ncols; ++j)
            if (!e.rows[i][j].is_zero() && !x[j].is_zero()) s += e.rows[i][j] * x[j];
        x[pc] = -s / e.rows[i][pc];
    }
    return x;
}

} // namespace

RankKernel rank_kernel(const Matrix& m) {
    Echelon e = bareiss(m);
    RankKernel rk;
    rk.rank = (int)e.pivot_cols.size();
    rk.pivot_cols = e.pivot_cols;
    std::vector<int> free_cols;
    {
        size_t p = 0;
        for (int j = 0; j < m.cols(); ++j) {
            if (p < e.pivot_cols.size() && e.pivot_cols[p] == j) ++p;
            else free_cols.push_back(j);
        }
    }
    for (size_t k = 0; k < free_cols.size(); ++k) {
        Vec fv(free_cols.size(), Scalar(0));
        fv[k] = Scalar(1);
        rk.kernel.push_back(back_substitute(e, m.cols(), fv, free_cols));
    }
    return rk;
}

int rank_of(const Matrix& m) { return (int)bareiss(m).pivot_cols.size(); }

int rank_of_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return 0;
    return rank_of(Matrix::from_rows(rows));
}

std::optional<AffineSolution> solve_affine(const Matrix& m, const Vec& b) {
    if ((int)b.size() != m.rows()) fail("SizeMismatch", "solve_affine rhs");
    Matrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    Echelon e = bareiss(aug);
    // inconsistent iff some pivot lands in the rhs column
    for (int pc : e.pivot_cols)
        if (pc == m.cols()) return std::nullopt;
    // particular solution: free variables = 0, solve U x = rhs
    Vec x(m.cols(), Scalar(0));
    for (int i = (int)e.rows.size() - 1; i >= 0; --i) {
        int pc = e.pivot_cols[i];
        Scalar s(0);
        for (int j = pc + 1; j < m.cols(); ++j)
            if (!e.rows[i][j].is_zero() && !x[j].is_zero()) s += e.rows[i][j] * x[j];
        // echelon row reads  U x = c  with c in the augmented column
        x[pc] = (e.rows[i][m.cols()] - s) / e.rows[i][pc];
    }
    AffineSolution sol;
    sol.particular = std::move(x);
    sol.kernel = rank_kernel(m).kernel;
    return sol;
}

} // namespace folforge
