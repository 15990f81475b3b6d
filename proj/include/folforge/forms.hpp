#ifndef FOLFORGE_FORMS_HPP
#define FOLFORGE_FORMS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "folforge/multipoly.hpp"

namespace folforge {

// Polynomial vector field on the affine cone: one component per
// geometric variable.  Components may live in a larger universe when
// deformation parameters are present.
struct PolyField {
    int ngeom = 0;
    std::vector<MultiPoly> comp;

    int nvars() const { return comp.empty() ? 0 : comp[0].nvars(); }
};

PolyField radial_field(int nvars, int ngeom);
// field with linear components (M x)_i for a square matrix acting on the
// first ngeom variables
PolyField linear_field(const class Matrix& m, int nvars);

// Polynomial differential q-form.  Basis q-vectors are encoded as bit
// masks over the geometric variables; only the increasing representative
// is stored.  Variables at index >= ngeom are commuting parameters: the
// exterior derivative and the radial field ignore them.
class PolyForm {
  public:
    PolyForm() : nvars_(0), ngeom_(0), q_(0) {}
    PolyForm(int nvars, int ngeom, int q);

    static PolyForm from_poly(const MultiPoly& f, int ngeom); // 0-form

    int nvars() const { return nvars_; }
    int ngeom() const { return ngeom_; }
    int degree() const { return q_; }
    bool is_zero() const { return comps_.empty(); }

    const std::map<uint32_t, MultiPoly>& comps() const { return comps_; }
    MultiPoly coeff(uint32_t mask) const;
    void add(uint32_t mask, const MultiPoly& f);

    PolyForm operator-() const;
    PolyForm operator+(const PolyForm& o) const;
    PolyForm operator-(const PolyForm& o) const;
    PolyForm scaled(const Scalar& c) const;
    PolyForm scaled_poly(const MultiPoly& f) const;
    bool operator==(const PolyForm& o) const;
    bool operator!=(const PolyForm& o) const { return !(*this == o); }

    // every coefficient homogeneous of the same degree in the geometric
    // variables; returns that degree (-1 for the zero form)
    bool homogeneous_coeff_degree(int* deg) const;

    std::vector<MultiPoly> coefficients() const;

  private:
    int nvars_, ngeom_, q_;
    std::map<uint32_t, MultiPoly> comps_;
};

PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyForm ext_d(const PolyForm& a);
PolyForm contract(const PolyField& v, const PolyForm& a);
// list applied left to right: contract({u,v}, a) = i_v(i_u(a))
PolyForm contract(const std::vector<PolyField>& vs, const PolyForm& a);
PolyForm contract_radial(const PolyForm& a);
PolyForm lie_derivative(const PolyField& v, const PolyForm& a);

struct IntegrabilityVerdict {
    bool integrable = false;
    // which identity failed: "", "wedge", "decomposability", "integrability"
    std::string failed_condition;
    std::vector<int> witness_tuple;
};

// q = 1: w /\ dw == 0.  q >= 2: for every increasing (q-1)-tuple V of
// coordinate fields, (i_V w) /\ w == 0 and (i_V w) /\ dw == 0.
IntegrabilityVerdict check_integrable(const PolyForm& a);

// i_R(da) == (m+q) a for radially annihilated a with homogeneous
// coefficients of degree m
bool check_euler(const PolyForm& a, int m);

// substitute variable images into every coefficient; masks are remapped
// through nothing (use for parameter substitution only: images must fix
// the geometric variables as variables of the new universe)
PolyForm map_coefficients(const PolyForm& a, int new_nvars, int new_ngeom,
                          const std::vector<MultiPoly>& images);

// linear change of geometric coordinates x = A y (A acts on differentials
// too); A is (new_ngeom) columns? see foliation::make_linear_pullback

std::string form_str(const PolyForm& a, const std::vector<std::string>& names);

// canonical flattening used by all rank computations: basis masks of the
// form degree in ascending order, monomials of the coefficient degree in
// grlex-descending order
std::vector<uint32_t> masks_of_degree(int ngeom, int q);
std::vector<Scalar> form_to_vector(const PolyForm& a, int coeff_degree);
PolyForm form_from_vector(const std::vector<Scalar>& v, int nvars, int ngeom, int q,
                          int coeff_degree);

// pullback along the linear substitution y = A x: `eta` lives on the
// target (A.rows() geometric variables), the result on the source
// (A.cols() variables); both coefficients and differentials transform
PolyForm pullback_linear(const PolyForm& eta, const class Matrix& a);

} // namespace folforge

#endif
