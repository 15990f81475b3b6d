#ifndef FOLFORGE_MULTIPOLY_HPP
#define FOLFORGE_MULTIPOLY_HPP

#include <string>
#include <vector>

#include "folforge/scalar.hpp"

namespace folforge {

using Expo = std::vector<int>;

int expo_deg(const Expo& e);

// graded lexicographic, x0 heaviest; returns <0, 0, >0
int grlex_cmp(const Expo& a, const Expo& b);

struct Term {
    Expo e;
    Scalar c;
};

// Sparse multivariate polynomial over Q(i) with a fixed variable universe.
// Terms are kept sorted in descending grlex order with no zero
// coefficients, so equal polynomials compare bit-identically.
class MultiPoly {
  public:
    MultiPoly() : nv_(0) {}
    explicit MultiPoly(int nvars) : nv_(nvars) {}

    static MultiPoly constant(int nvars, const Scalar& c);
    static MultiPoly variable(int nvars, int i);
    static MultiPoly monomial(int nvars, Expo e, const Scalar& c);

    int nvars() const { return nv_; }
    bool is_zero() const { return ts_.empty(); }
    const std::vector<Term>& terms() const { return ts_; }

    int total_degree() const; // -1 for the zero polynomial
    int degree_in(int var) const;
    bool is_homogeneous(int* deg = nullptr) const;
    // homogeneity counting only the first ngeom variables (parameters
    // such as eps live above them and are graded out)
    bool is_homogeneous_in_prefix(int ngeom, int* deg = nullptr) const;
    int prefix_degree(int ngeom) const;
    bool is_constant() const { return ts_.empty() || (ts_.size() == 1 && expo_deg(ts_[0].e) == 0); }
    Scalar constant_value() const;
    bool uses_var(int var) const;

    const Term& leading_term() const; // grlex
    Scalar coeff_of(const Expo& e) const;
    MultiPoly monic() const;

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly scaled(const Scalar& c) const;
    MultiPoly pow(unsigned k) const;
    bool operator==(const MultiPoly& o) const { return nv_ == o.nv_ && ts_ == o.ts_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly derivative(int var) const;

    // substitute images[i] for variable i; images live in a common universe
    MultiPoly substitute(const std::vector<MultiPoly>& images) const;
    Scalar eval(const std::vector<Scalar>& point) const;

    // universe change: append fresh variables at the end
    MultiPoly extended(int new_nvars) const;
    // drop trailing variables (they must not occur)
    MultiPoly shrunk(int new_nvars) const;
    // coefficient of var^k, with var zeroed out of the exponent
    MultiPoly coeff_in(int var, int k) const;

    // raw term editing used by the builders; normalizes on finish
    void add_term(Expo e, const Scalar& c);

  private:
    int nv_;
    std::vector<Term> ts_;

    friend bool operator==(const Term& a, const Term& b);
};

inline bool operator==(const Term& a, const Term& b) { return a.e == b.e && a.c == b.c; }

MultiPoly operator*(const Scalar& c, const MultiPoly& p);

// exact division; fails with NotDivisible when the quotient is not polynomial
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);
bool divides(const MultiPoly& b, const MultiPoly& a);

// gcd normalized to grlex-monic; gcd(0, b) = monic b
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_gcd_many(const std::vector<MultiPoly>& ps);

// product of the distinct irreducible factors, grlex-monic
MultiPoly squarefree_part(const MultiPoly& p);

// Sylvester resultant eliminating `var`; the raw Sylvester determinant,
// no division by leading coefficients.
MultiPoly resultant_univ(const MultiPoly& u, const MultiPoly& v, int var);
// disc_t(u) = res_t(u, du/dt) under the same raw convention
MultiPoly discriminant_univ(const MultiPoly& u, int var);

// fraction-free determinant of a square polynomial matrix (row-major)
MultiPoly det_poly(std::vector<std::vector<MultiPoly>> m);

std::string poly_str(const MultiPoly& p, const std::vector<std::string>& names);

// all exponent vectors of total degree `deg`, grlex descending
std::vector<Expo> monomials_of_degree(int nvars, int deg);

} // namespace folforge

#endif
