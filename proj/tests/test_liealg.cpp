#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "folforge/liealg.hpp"
#include "folforge/quadric.hpp"

using namespace folforge;

namespace {

// split form used for the rank-two orthogonal algebra displays:
// q = x2^2 - 2 x1 x3 + 2 x0 x4
Matrix split_form_5() {
    Matrix q(5, 5);
    q.at(2, 2) = Scalar(1);
    q.at(1, 3) = Scalar(-1);
    q.at(3, 1) = Scalar(-1);
    q.at(0, 4) = Scalar(1);
    q.at(4, 0) = Scalar(1);
    return q;
}

Matrix jordan_block_matrix(int n) {
    Matrix j(n, n);
    for (int i = 0; i + 1 < n; ++i) j.at(i, i + 1) = Scalar(1);
    return j;
}

Matrix random_invertible(int n, Rng& rng) {
    while (true) {
        Matrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.at(i, j) = Scalar(rng.range(-3, 3));
        if (!det(g).is_zero()) return g;
    }
}

Matrix inverse_of(const Matrix& g) {
    const int n = g.rows();
    Matrix inv(n, n);
    for (int col = 0; col < n; ++col) {
        Vec e(n, Scalar(0));
        e[col] = Scalar(1);
        auto sol = solve_affine(g, e);
        REQUIRE(sol.has_value());
        for (int i = 0; i < n; ++i) inv.at(i, col) = sol->particular[i];
    }
    return inv;
}

} // namespace

TEST_CASE("tagged elements") {
    Matrix j = jordan_block_matrix(3);
    LieElement e = LieElement::nilpotent(j);
    CHECK(e.tag == LieElement::Tag::nilpotent);
    CHECK_THROWS_WITH_AS(LieElement::nilpotent(Matrix::identity(3)),
                         doctest::Contains("NotNilpotent"), error);
}

TEST_CASE("sl2 symmetric power bracket relations") {
    for (int n = 1; n <= 4; ++n) {
        auto s = sym_power_fields(n);
        CHECK(lie_bracket(s.h, s.e) == s.e.scaled(Scalar(2)));
        CHECK(lie_bracket(s.h, s.f) == s.f.scaled(Scalar(-2)));
        CHECK(lie_bracket(s.e, s.f) == s.h);
        CHECK(lie_bracket(s.e, s.e).is_zero());
    }
}

TEST_CASE("symmetric power fields preserve the invariant quadric") {
    auto s = sym_power_fields(4);
    // frozen from the sampling-kernel oracle: a0 a4 - a1 a3 / 4 + a2^2 / 12
    Matrix qhat(5, 5);
    qhat.at(0, 4) = Scalar::of_fraction(1, 2);
    qhat.at(4, 0) = Scalar::of_fraction(1, 2);
    qhat.at(1, 3) = Scalar::of_fraction(-1, 8);
    qhat.at(3, 1) = Scalar::of_fraction(-1, 8);
    qhat.at(2, 2) = Scalar::of_fraction(1, 12);
    CHECK(is_in_orthogonal(s.e, qhat));
    CHECK(is_in_orthogonal(s.h, qhat));
    CHECK(is_in_orthogonal(s.f, qhat));
    CHECK(rank_of(qhat) == 5);
}

TEST_CASE("jordan partitions of the three orthogonal nilpotent classes") {
    auto s = sym_power_fields(4);
    CHECK(jordan_partition(s.e) == std::vector<int>{5});

    Matrix n2(5, 5);
    n2.at(0, 1) = Scalar(1);
    n2.at(1, 2) = Scalar(1); // x1 d/dx0 + x2 d/dx1
    CHECK(jordan_partition(n2) == std::vector<int>{3, 1, 1});

    Matrix n3(5, 5);
    n3.at(0, 1) = Scalar(1);
    n3.at(2, 3) = Scalar(1); // x1 d/dx0 + x3 d/dx2
    CHECK(jordan_partition(n3) == std::vector<int>{2, 2, 1});

    CHECK_THROWS_WITH_AS(jordan_partition(Matrix::identity(3)), doctest::Contains("NotNilpotent"),
                         error);
}

TEST_CASE("jordan partition properties (randomized)") {
    Rng rng(71);
    for (int it = 0; it < 10; ++it) {
        // random nilpotent from a random partition, then conjugated
        std::vector<int> parts;
        int left = 5;
        while (left > 0) {
            int p = (int)rng.range(1, left);
            parts.push_back(p);
            left -= p;
        }
        std::sort(parts.rbegin(), parts.rend());
        Matrix m(5, 5);
        int off = 0;
        for (int p : parts) {
            for (int i = 0; i + 1 < p; ++i) m.at(off + i, off + i + 1) = Scalar(1);
            off += p;
        }
        CHECK(jordan_partition(m) == parts);
        Matrix g = random_invertible(5, rng);
        Matrix conj = g * m * inverse_of(g);
        CHECK(jordan_partition(conj) == parts);
        // sum of parts = size; number of parts = kernel dimension
        CHECK((int)parts.size() == 5 - rank_of(conj));
        // centralizer dimension in gl equals sum (2i - 1) part_i
        int expect = 0;
        for (size_t i = 0; i < parts.size(); ++i) expect += (2 * (int)i + 1) * parts[i];
        CHECK((int)centralizer_basis(conj, AlgebraConstraint::general_linear).size() == expect);
    }
}

TEST_CASE("centralizers") {
    CHECK(centralizer_basis(Matrix(3, 3), AlgebraConstraint::general_linear).size() == 9);
    for (int k = 2; k <= 5; ++k)
        CHECK((int)centralizer_basis(jordan_block_matrix(k), AlgebraConstraint::general_linear)
                  .size() == k);

    // regular nilpotent inside so(q), q = x2^2 - 2 x1 x3 + 2 x0 x4:
    // the plain Jordan block lies in the algebra and its centralizer
    // there is spanned by J and J^3
    Matrix qhat = split_form_5();
    Matrix j = jordan_block_matrix(5);
    CHECK(is_in_orthogonal(j, qhat));
    auto cent = centralizer_basis(j, AlgebraConstraint::orthogonal, &qhat);
    CHECK(cent.size() == 2);
    Matrix j3 = j * j * j;
    // span equality via rank
    auto vec_of = [](const Matrix& m) {
        Vec v;
        for (int i = 0; i < m.rows(); ++i)
            for (int jj = 0; jj < m.cols(); ++jj) v.push_back(m.at(i, jj));
        return v;
    };
    std::vector<Vec> rows = {vec_of(cent[0]), vec_of(cent[1])};
    CHECK(rank_of_rows(rows) == 2);
    rows.push_back(vec_of(j));
    rows.push_back(vec_of(j3));
    CHECK(rank_of_rows(rows) == 2);
}

TEST_CASE("bracket equation [x, y] = y inside so(q)") {
    Matrix qhat = split_form_5();
    Matrix j = jordan_block_matrix(5);
    auto sol = bracket_eq_solutions(j, qhat);
    REQUIRE(sol.particular.has_value());
    CHECK(!sol.degenerate);
    CHECK(sol.kernel.size() == 2); // the centralizer found above
    CHECK(lie_bracket(*sol.particular, j) == j);
    CHECK(is_in_orthogonal(*sol.particular, qhat));
    // the displayed diagonal solution diag(2,1,0,-1,-2) solves it too
    Matrix d(5, 5);
    for (int i = 0; i < 5; ++i) d.at(i, i) = Scalar(2 - i);
    CHECK(lie_bracket(d, j) == j);
    CHECK(is_in_orthogonal(d, qhat));
    // and differs from the particular solution by a kernel element
    auto vec_of = [](const Matrix& m) {
        Vec v;
        for (int i = 0; i < m.rows(); ++i)
            for (int jj = 0; jj < m.cols(); ++jj) v.push_back(m.at(i, jj));
        return v;
    };
    std::vector<Vec> rows;
    for (auto& k : sol.kernel) rows.push_back(vec_of(k));
    int base = rank_of_rows(rows);
    rows.push_back(vec_of(d - *sol.particular));
    CHECK(rank_of_rows(rows) == base);

    // y = 0 is degenerate: the whole algebra
    auto zero = bracket_eq_solutions(Matrix(5, 5), qhat);
    CHECK(zero.degenerate);
    CHECK(zero.kernel.size() == 10);

    // a [2,2,1] nilpotent of a rank-5 form also admits solutions
    MultiPoly x0 = MultiPoly::variable(5, 0), x1 = MultiPoly::variable(5, 1),
              x2 = MultiPoly::variable(5, 2), x3 = MultiPoly::variable(5, 3),
              x4 = MultiPoly::variable(5, 4);
    QuadricContext ctx(x0 * x3 - x1 * x2 + x4 * x4);
    Matrix n3(5, 5);
    n3.at(0, 1) = Scalar(1);
    n3.at(2, 3) = Scalar(1);
    REQUIRE(is_in_orthogonal(n3, ctx.sym_matrix()));
    auto sol3 = bracket_eq_solutions(n3, ctx.sym_matrix());
    REQUIRE(sol3.particular.has_value());
    CHECK(lie_bracket(*sol3.particular, n3) == n3);
    CHECK(sol3.kernel.size() ==
          centralizer_basis(n3, AlgebraConstraint::orthogonal, &ctx.sym_matrix()).size());
}

TEST_CASE("nilpotent exponentials") {
    Matrix j2 = jordan_block_matrix(2);
    auto e = exp_nilpotent(j2, 1, 0);
    CHECK(e[0][0] == MultiPoly::constant(1, Scalar(1)));
    CHECK(e[0][1] == MultiPoly::variable(1, 0));
    CHECK(e[1][0].is_zero());
    CHECK(e[1][1] == MultiPoly::constant(1, Scalar(1)));

    // group law exp(sM) exp(tM) = exp((s+t)M) for the Sym^4 raising field
    auto s4 = sym_power_fields(4);
    auto es = exp_nilpotent(s4.e, 2, 0);
    auto et = exp_nilpotent(s4.e, 2, 1);
    // product of polynomial matrices
    std::vector<std::vector<MultiPoly>> prod(5, std::vector<MultiPoly>(5, MultiPoly(2)));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) prod[i][j] = prod[i][j] + es[i][k] * et[k][j];
    auto eu = exp_nilpotent(s4.e, 1, 0);
    MultiPoly s_plus_t = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(prod[i][j] == eu[i][j].substitute({s_plus_t}));

    // determinant identically one
    CHECK(det_poly(es) == MultiPoly::constant(2, Scalar(1)));

    CHECK_THROWS_AS(exp_nilpotent(Matrix::identity(2), 1, 0), error);

    // rational evaluation agrees with substitution
    Matrix at = exp_nilpotent_at(s4.e, Scalar::of_fraction(2, 3));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(at.at(i, j) == eu[i][j].eval({Scalar::of_fraction(2, 3)}));
}
