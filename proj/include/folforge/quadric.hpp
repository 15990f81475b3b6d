#ifndef FOLFORGE_QUADRIC_HPP
#define FOLFORGE_QUADRIC_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folforge/foliation.hpp"
#include "folforge/forms.hpp"
#include "folforge/liealg.hpp"

namespace folforge {

// Smooth quadric hypersurface {q = 0} in P^4 together with a monomial
// rewriting rule: the distinguished monomial of q is eliminated, giving
// unique normal forms modulo the principal ideal (q).
class QuadricContext {
  public:
    QuadricContext() = default; // empty, invalid until assigned
    explicit QuadricContext(MultiPoly q, std::optional<Expo> distinguished = std::nullopt);

    bool valid() const { return !q_.is_zero(); }
    const MultiPoly& q() const { return q_; }
    int nvars() const { return q_.nvars(); }
    const Expo& distinguished() const { return dist_; }
    const Matrix& sym_matrix() const { return sym_; }

    MultiPoly reduce(const MultiPoly& p) const;
    PolyForm reduce_coefficients(const PolyForm& a) const;

  private:
    MultiPoly q_;
    Expo dist_;
    Scalar dist_coeff_;
    Matrix sym_;
};

inline MultiPoly reduce_mod_quadric(const MultiPoly& p, const QuadricContext& ctx) {
    return ctx.reduce(p);
}

// coefficient vectors (in the canonical 1-form flattening at the given
// coefficient degree) spanning the representative ambiguity of sections:
// { g dq - 2 q dg } + q * { radially annihilated forms two degrees down }
std::vector<Vec> restriction_relations(const QuadricContext& ctx, int coeffdeg);

// equality / proportionality of sections of Omega^1(coeffdeg + 1)
bool restricted_equal(const PolyForm& w1, const PolyForm& w2, const QuadricContext& ctx);
bool restricted_proportional(const PolyForm& w1, const PolyForm& w2, const QuadricContext& ctx);

// does this polynomial form vanish on the quadric cone as a section,
// i.e. lie in q * Omega + dq /\ Omega?
bool vanishes_on_quadric(const PolyForm& a, const QuadricContext& ctx);

// Rational map given by homogeneous components, possibly with several
// target factors (for P^1 x P^1 style targets the target coordinates are
// the concatenation of the factor lists).
struct RationalMapData {
    int source_nvars = 0;
    std::vector<std::vector<MultiPoly>> factors;
};
RationalMapData make_rational_map(int source_nvars, std::vector<std::vector<MultiPoly>> factors,
                                  const QuadricContext* ctx);

MultiPoly pullback_poly(const RationalMapData& map, const MultiPoly& target_poly);

// Cleared pullback of a logarithmic form sum r_i dP_i / P_i on the
// target: forms sum r_i (prod_{j != i} F_j) dF_i with F_i the reduced
// pullbacks of the polar polynomials, divides out the coefficient gcd,
// and reduces mod q.
PolyForm pullback_form(const RationalMapData& map,
                       const std::vector<std::pair<Scalar, MultiPoly>>& log_description,
                       const QuadricContext& ctx);

// sl2 acting on binary forms of degree n in the plain monomial basis;
// matrices satisfy [H,E] = 2E, [H,F] = -2F, [E,F] = H
struct Sl2SymPower {
    int n = 0;
    Matrix e, h, f;
    PolyField e_field, h_field, f_field;
};
Sl2SymPower sym_power_fields(int n);

struct InvariantHypersurface {
    std::optional<MultiPoly> equation; // grlex monic
    int kernel_dimension = 0;
};

// samples the orbit of p0 under the group generated by the (linear
// nilpotent or diagonal) fields, solves for degree-d forms vanishing on
// the samples, and verifies the unique candidate is annihilated by every
// field.  Returns none when the kernel dimension is not 1.
InvariantHypersurface invariant_hypersurface(const Vec& p0, const std::vector<Matrix>& fields,
                                             int degree, Rng& rng);

// curve in P^4 given by binary forms of a common degree in (s, t)
struct CurveParam {
    std::vector<MultiPoly> comp; // universe of 2 variables (s, t)
};

// substitute the parametrization into every coefficient of omega
// (reduced mod q first) and test identical vanishing
bool curve_in_singular_scheme(const PolyForm& omega, const CurveParam& curve,
                              const QuadricContext& ctx);

// full verification bundle for the quadric foliation invariant under the
// affine subalgebra of the symmetric-power sl2 action
struct AffQBundle {
    QuadricContext ctx;
    PolyForm omega;
    int solver_dimension = 0; // quotient dimension, must be 1
    bool integrable = false;
    bool radial_ok = false;
    bool coeff_gcd_trivial = false;
    bool tangent_fields_annihilate = false;
    int orbit_dim = 0;
    int invariant_hyperplane_count = 0;
    MultiPoly invariant_hyperplane;
    bool contraction_cross_check = false;
    Sl2SymPower sl2;
    std::vector<Matrix> orthogonal_basis; // so(5) for the found quadric
};
AffQBundle affq_build();

// the three singular curves of the affq foliation
CurveParam affq_curve_gamma4();
CurveParam affq_curve_gamma3();
CurveParam affq_curve_line();

struct NamedCheck {
    std::string name;
    bool ok = false;
};
struct NamedExampleReport {
    std::string id;
    bool pass = false;
    std::vector<NamedCheck> checks;
};

// ids: QCstar-01, QCstar-11, QCplus-2, QCplus-3, affQ
NamedExampleReport verify_named_example(const std::string& id);

} // namespace folforge

#endif
