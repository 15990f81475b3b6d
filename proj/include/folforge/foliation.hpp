#ifndef FOLFORGE_FOLIATION_HPP
#define FOLFORGE_FOLIATION_HPP

#include <optional>
#include <vector>

#include "folforge/forms.hpp"
#include "folforge/linalg.hpp"

namespace folforge {

class QuadricContext;

// Codimension-q foliation on P^n, encoded by a homogeneous q-form on the
// affine cone with i_R omega = 0, integrable, and coefficient gcd 1.
// Degree bookkeeping is derived from the coefficient degree m:
//   degree d = m - 1, normal degree d + q + 1, canonical degree d + q - n,
//   slope ((n-q) - d)/(n-q).
struct FoliationSpec {
    int n = 0;
    int q = 0;
    PolyForm omega;
    int degree = 0;
    int normal_degree = 0;
    int canonical_degree = 0;
    Rat slope;
};

FoliationSpec make_foliation_spec(const PolyForm& omega);

// diagnostics without the all-or-nothing validation
struct FormReport {
    bool radial_ok = false;
    bool integrable = false;
    int degree = -1;
    MultiPoly singular_part;
};
FormReport inspect_form(const PolyForm& omega);

enum class DegreeRoute { CoefficientDegree, TangencyDivisor };

// degree of the foliation; the tangency route restricts to a random
// linear P^q and reads the degree of the induced zero divisor
int degree_of(const PolyForm& omega, DegreeRoute route, Rng& rng);

// gcd of all coefficients; 1 exactly when the singular set has
// codimension >= 2
MultiPoly singular_divisorial_part(const PolyForm& omega);

// sum_i lambda_i (prod_{j != i} f_j) df_i  with  sum lambda_i deg(f_i) = 0
PolyForm make_log_family(const std::vector<Scalar>& lambda, const std::vector<MultiPoly>& f);

// substitution pullback of eta along y = A x
PolyForm make_linear_pullback(const Matrix& a, const PolyForm& eta);

// basis of { omega : 1-form, coefficient degree coeffdeg, i_R omega = 0,
// i_v omega = 0 for every v } (identically, or modulo the quadric ideal)
std::vector<PolyForm> tangent_form_solve(const std::vector<PolyField>& fields, int coeffdeg,
                                         const QuadricContext* ctx);

// h d(omega) == dh /\ omega, the cleared form of d(omega / h) = 0
bool closed_one_form_check(const PolyForm& omega, const MultiPoly& h);

// Obstruction (q+1)-form attached to an omega-invariant divisor with
// cleared residue form eta_cleared = h * (sum lambda_a dh_a / h_a):
// returns (eta_cleared /\ omega)/h + m * d omega.  The division is exact
// precisely because the divisor is invariant.
PolyForm invariant_divisor_obstruction(const PolyForm& omega, const PolyForm& eta_cleared,
                                       const MultiPoly& h, int m);

// basis of { P homogeneous of degree d : dP /\ d(omega) == 0 }
std::vector<MultiPoly> map_component_solve(const PolyForm& omega, int d);

// (n+1) - dim{ constant v : i_v a = 0 and i_v da = 0 }
int essential_variables(const PolyForm& a);

struct Classification {
    int degree = -1;
    // degree 0
    bool linear_projection = false;
    std::vector<MultiPoly> projection_forms;
    // degree 1, rational map to P(1^q, 2)
    bool fibration_case = false;
    std::vector<MultiPoly> linear_components;
    MultiPoly quadric_component;
    // degree 1, linear pullback of a vector-field foliation
    bool vector_field_case = false;
    int essential_count = 0;
};

// degree <= 1 foliations: either the fibration by q linear forms and one
// quadric, or the pullback of a foliation spanned by a linear vector
// field on at most q+2 variables; both flags may hold at once
Classification classify_low_degree(const PolyForm& omega);

// builds (1+2e) Q H2 dH1 - Q H1 dH2 - e H1 H2 dQ over the ring extended
// by the parameter e and checks: integrability identically in e, the
// residue balance (1+2e) - 1 - 2e = 0, and that the e = 0 slice is
// exactly Q (H2 dH1 - H1 dH2)
bool deformation_limit_check(const MultiPoly& q2, const MultiPoly& h1, const MultiPoly& h2);

// rank of v -> L_v(omega) into coefficient coordinates modulo
// span{omega} and the given extra relation vectors
int orbit_rank(const PolyForm& omega, const std::vector<PolyField>& fields,
               const std::vector<Vec>& extra_relations);

} // namespace folforge

#endif
