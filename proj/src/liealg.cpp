#include "folforge/liealg.hpp"

#include <algorithm>

namespace folforge {

LieElement LieElement::nilpotent(Matrix mat) {
    if (!is_nilpotent(mat)) fail("NotNilpotent", "matrix tagged nilpotent is not");
    return {std::move(mat), Tag::nilpotent};
}

Matrix lie_bracket(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        fail("SizeMismatch", "bracket of non-matching matrices");
    return a * b - b * a;
}

bool is_nilpotent(const Matrix& m) {
    if (m.rows() != m.cols()) fail("SizeMismatch", "nilpotency of a non-square matrix");
    Matrix p = m;
    for (int k = 1; k < m.rows(); ++k) p = p * m;
    return p.is_zero();
}

bool is_diagonal(const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j && !m.at(i, j).is_zero()) return false;
    return true;
}

bool is_in_orthogonal(const Matrix& a, const Matrix& qhat) {
    return (a.transpose() * qhat + qhat * a).is_zero();
}

std::vector<int> jordan_partition(const Matrix& m) {
    if (!is_nilpotent(m)) fail("NotNilpotent", "jordan partition wants a nilpotent matrix");
    const int n = m.rows();
    // ranks of powers m^0 .. m^n
    std::vector<int> r(n + 1);
    r[0] = n;
    Matrix p = Matrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        p = p * m;
        r[k] = rank_of(p);
    }
    // number of blocks of size >= k is r[k-1] - r[k]
    std::vector<int> part;
    for (int k = 1; k <= n; ++k) {
        int ge_k = r[k - 1] - r[k];
        int ge_k1 = (k < n) ? r[k] - r[k + 1] : 0;
        int exactly = ge_k - ge_k1;
        for (int c = 0; c < exactly; ++c) part.push_back(k);
    }
    std::sort(part.rbegin(), part.rend());
    return part;
}

namespace {

// rows of the linear conditions "x in so(qhat)" over vec(x)
std::vector<Vec> orthogonality_rows(const Matrix& qhat) {
    const int n = qhat.rows();
    std::vector<Vec> rows;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            // (x^T qhat + qhat x)[a][b] = sum_k x(k,a) qhat(k,b) + qhat(a,k) x(k,b)
            Vec row((size_t)n * n, Scalar(0));
            for (int k = 0; k < n; ++k) {
                row[(size_t)k * n + a] += qhat.at(k, b);
                row[(size_t)k * n + b] += qhat.at(a, k);
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

Matrix unvec(const Vec& v, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = v[(size_t)i * n + j];
    return m;
}

// rows of x -> [x, y] - i.e. ([x,y])(a,b) as linear forms in vec(x)
std::vector<Vec> bracket_rows(const Matrix& y) {
    const int n = y.rows();
    std::vector<Vec> rows;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Vec row((size_t)n * n, Scalar(0));
            // (x y)(a,b) = sum_k x(a,k) y(k,b); (y x)(a,b) = sum_k y(a,k) x(k,b)
            for (int k = 0; k < n; ++k) {
                row[(size_t)a * n + k] += y.at(k, b);
                row[(size_t)k * n + b] -= y.at(a, k);
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

} // namespace

std::vector<Matrix> orthogonal_algebra_basis(const Matrix& qhat) {
    const int n = qhat.rows();
    RankKernel rk = rank_kernel(Matrix::from_rows(orthogonality_rows(qhat)));
    std::vector<Matrix> out;
    for (auto& v : rk.kernel) out.push_back(unvec(v, n));
    return out;
}

std::vector<Matrix> centralizer_basis(const Matrix& n, AlgebraConstraint c, const Matrix* qhat) {
    std::vector<Vec> rows = bracket_rows(n);
    if (c == AlgebraConstraint::orthogonal) {
        if (!qhat) fail("BadConstraint", "orthogonal constraint needs the quadratic form");
        for (auto& r : orthogonality_rows(*qhat)) rows.push_back(r);
    }
    RankKernel rk = rank_kernel(Matrix::from_rows(rows));
    std::vector<Matrix> out;
    for (auto& v : rk.kernel) out.push_back(unvec(v, n.rows()));
    return out;
}

BracketSolutions bracket_eq_solutions(const Matrix& y, const Matrix& qhat) {
    BracketSolutions sol;
    const int n = y.rows();
    if (y.is_zero()) {
        // [x, 0] = 0 holds for the whole algebra
        sol.degenerate = true;
        sol.particular = Matrix(n, n);
        sol.kernel = orthogonal_algebra_basis(qhat);
        return sol;
    }
    if (!is_nilpotent(y)) fail("NotNilpotent", "bracket equation wants nilpotent y");
    std::vector<Vec> rows = bracket_rows(y);
    Vec rhs;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) rhs.push_back(y.at(a, b));
    for (auto& r : orthogonality_rows(qhat)) {
        rows.push_back(r);
        rhs.push_back(Scalar(0));
    }
    auto aff = solve_affine(Matrix::from_rows(rows), rhs);
    if (!aff) return sol; // no solution is a legal outcome
    sol.particular = unvec(aff->particular, n);
    for (auto& v : aff->kernel) sol.kernel.push_back(unvec(v, n));
    return sol;
}

std::vector<std::vector<MultiPoly>> exp_nilpotent(const Matrix& m, int nvars, int tvar) {
    if (!is_nilpotent(m)) fail("NotNilpotent", "exp of a non-nilpotent matrix");
    const int n = m.rows();
    std::vector<std::vector<MultiPoly>> out(n, std::vector<MultiPoly>(n, MultiPoly(nvars)));
    Matrix p = Matrix::identity(n);
    Rat fact(1);
    MultiPoly tpow = MultiPoly::constant(nvars, Scalar(1));
    MultiPoly t = MultiPoly::variable(nvars, tvar);
    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            p = p * m;
            fact *= k;
            tpow = tpow * t;
        }
        Scalar inv_fact{Rat(1) / fact};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!p.at(i, j).is_zero())
                    out[i][j] = out[i][j] + tpow.scaled(p.at(i, j) * inv_fact);
    }
    return out;
}

Matrix exp_nilpotent_at(const Matrix& m, const Scalar& t) {
    if (!is_nilpotent(m)) fail("NotNilpotent", "exp of a non-nilpotent matrix");
    const int n = m.rows();
    Matrix out(n, n), p = Matrix::identity(n);
    Rat fact(1);
    Scalar tpow(1);
    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            p = p * m;
            fact *= k;
            tpow *= t;
        }
        out = out + p.scaled(tpow * Scalar{Rat(1) / fact});
    }
    return out;
}

Scalar det(const Matrix& m) {
    if (m.rows() != m.cols()) fail("SizeMismatch", "determinant of non-square matrix");
    const int n = m.rows();
    std::vector<std::vector<MultiPoly>> p(n, std::vector<MultiPoly>(n, MultiPoly(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p[i][j] = MultiPoly::constant(0, m.at(i, j));
    return det_poly(std::move(p)).constant_value();
}

} // namespace folforge
