#ifndef FOLFORGE_PENCIL_HPP
#define FOLFORGE_PENCIL_HPP

#include <utility>
#include <vector>

#include "folforge/forms.hpp"

namespace folforge {

// First integral (f^p : g^q) with coprime positive multiplicities and
// p deg f = q deg g; members are beta f^p - alpha g^q.
struct Pencil {
    MultiPoly f, g;
    int p = 1, q = 1;
    int member_degree = 0;
};

Pencil make_pencil(const MultiPoly& f, const MultiPoly& g, int p, int q);

// cleared numerator of d(f^p / g^q):  p g df - q f dg
PolyForm pencil_form(const Pencil& pencil);

MultiPoly pencil_member(const Pencil& pencil, const Scalar& alpha, const Scalar& beta);

// underlying polynomial is not squarefree
bool is_non_reduced(const MultiPoly& member);

struct FiberBounds {
    int lower = 0;
    int upper = 0;
    // confirmed non-reduced members as (alpha : beta)
    std::vector<std::pair<Scalar, Scalar>> witnesses;
};

// lower: exact count of non-reduced members among the two distinguished
// ones and the rational roots of the cross-line discriminant gcd;
// upper: distinct complex roots of the squarefree part of that gcd, with
// the distinguished members counted separately.  lower <= true <= upper.
FiberBounds multiple_fiber_bounds(const Pencil& pencil, int lines, uint64_t seed);

// number of distinct absolutely irreducible factors: plane restriction,
// squarefree part, then 1 + kernel dimension of the closed-1-form system
// with the Gao degree bounds (G: deg_x <= m-1, deg_y <= n; H: deg_x <= m,
// deg_y <= n-2); two independent planes must agree
int absolute_factor_count(const MultiPoly& h, uint64_t seed);

// sum over the listed members of (absolute factor count of the
// squarefree part - 1); a lower bound for the base number
int r_partial(const Pencil& pencil, const std::vector<std::pair<Scalar, Scalar>>& members,
              uint64_t seed);

struct HalphenTriple {
    int p = 2, q = 2, r = 2;
};

// 1/p + 1/q + 1/r > 1, cross-checked against the explicit list
// (2,2,m), (2,3,3), (2,3,4), (2,3,5) up to permutation
bool halphen_admissible(const HalphenTriple& t);

// given binary F, G, H with F^p + G^q + H^r = 0 and common degree k of
// the powers, verify the three cleared contraction identities
//   p F^{p-1} ((k/p) F dG - (k/q) G dF) = r H^{r-1} ((k/q) G dH - (k/r) H dG)
// and cyclic companions, exactly
bool halphen_witness_check(const MultiPoly& f2, const MultiPoly& g2, const MultiPoly& h2,
                           const HalphenTriple& t, int k);

// all rational roots of a polynomial in a single active variable
std::vector<Rat> rational_roots(const MultiPoly& p, int var);

} // namespace folforge

#endif
