#ifndef FOLFORGE_LIEALG_HPP
#define FOLFORGE_LIEALG_HPP

#include <optional>
#include <vector>

#include "folforge/linalg.hpp"
#include "folforge/multipoly.hpp"

namespace folforge {

// Exact matrix Lie-algebra element with an optional checked tag.
struct LieElement {
    enum class Tag { unknown, nilpotent, semisimple };
    Matrix m;
    Tag tag = Tag::unknown;

    static LieElement nilpotent(Matrix mat);
    static LieElement plain(Matrix mat) { return {std::move(mat), Tag::unknown}; }
};

Matrix lie_bracket(const Matrix& a, const Matrix& b); // ab - ba
bool is_nilpotent(const Matrix& m);
bool is_diagonal(const Matrix& m);

// a^T Qhat + Qhat a == 0
bool is_in_orthogonal(const Matrix& a, const Matrix& qhat);

// partition of the size from the rank sequence of powers, parts descending
std::vector<int> jordan_partition(const Matrix& m);

enum class AlgebraConstraint { general_linear, orthogonal };

// kernel basis of x -> [x, n] inside gl or so(qhat)
std::vector<Matrix> centralizer_basis(const Matrix& n, AlgebraConstraint c,
                                      const Matrix* qhat = nullptr);

// basis of { m : m^T qhat + qhat m = 0 }
std::vector<Matrix> orthogonal_algebra_basis(const Matrix& qhat);

struct BracketSolutions {
    bool degenerate = false;           // y == 0: every x solves [x,0] = 0
    std::optional<Matrix> particular;  // absent when no solution
    std::vector<Matrix> kernel;        // the centralizer inside the constraint
};

// affine solutions of [x, y] = y inside so(qhat)
BracketSolutions bracket_eq_solutions(const Matrix& y, const Matrix& qhat);

// exp(t M) as a matrix of polynomials in variable tvar of an nvars universe
std::vector<std::vector<MultiPoly>> exp_nilpotent(const Matrix& m, int nvars, int tvar);
// exp(t M) at a rational t
Matrix exp_nilpotent_at(const Matrix& m, const Scalar& t);

// determinant of a scalar matrix (fraction-free)
Scalar det(const Matrix& m);

} // namespace folforge

#endif
