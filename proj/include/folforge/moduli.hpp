#ifndef FOLFORGE_MODULI_HPP
#define FOLFORGE_MODULI_HPP

#include <optional>
#include <string>
#include <vector>

#include "folforge/foliation.hpp"
#include "folforge/quadric.hpp"

namespace folforge {

struct Ambient {
    enum class Kind { projective, quadric3 };
    Kind kind = Kind::projective;
    int n = 3; // projective dimension (3 for the quadric's P^4 cone - 1)

    static Ambient projective(int n) { return {Kind::projective, n}; }
    static Ambient quadric3() { return {Kind::quadric3, 3}; }
    int cone_vars() const { return kind == Kind::projective ? n + 1 : 5; }
};

// sections of twisted 1-forms: admissible representatives (coefficient
// degree twist - 1, radially annihilated), with the representative
// ambiguity relations on the quadric
class FormSpace {
  public:
    FormSpace(Ambient ambient, int twist);

    const Ambient& ambient() const { return ambient_; }
    int twist() const { return twist_; }
    int coeff_degree() const { return twist_ - 1; }
    int dimension() const { return (int)basis_.size(); }
    int quotient_dimension() const { return (int)basis_.size() - relation_rank_; }
    const std::vector<Vec>& relations() const { return relations_; }

    // coordinates of a 1-form in the quotient (relation pivots eliminated)
    Vec to_quotient(const PolyForm& w) const;

  private:
    Ambient ambient_;
    int twist_;
    std::vector<Vec> basis_;
    std::vector<Vec> relations_; // echelonized
    std::vector<int> relation_pivots_;
    int relation_rank_ = 0;
};

struct ComponentFamily {
    enum class Kind { rational, logarithmic, linear_pullback, action_orbit };
    Kind kind = Kind::rational;
    Ambient ambient;
    std::vector<int> degrees; // (d1, d2) / (d1..dk) / (d) for pullbacks

    static ComponentFamily rational(Ambient a, int d1, int d2);
    static ComponentFamily logarithmic(Ambient a, std::vector<int> ds);
    static ComponentFamily linear_pullback(Ambient a, int d);
};

// dimension of the projectivized parameter space
int domain_dimension(const ComponentFamily& family);
// dictionary of generic fiber dimensions, verified at use sites
int fiber_dimension(const ComponentFamily& family);

struct Basepoint {
    std::vector<Scalar> lambda;
    std::vector<MultiPoly> fs;
    Matrix proj;  // linear pullback only
    PolyForm eta; // linear pullback only
};

Basepoint sample_basepoint(const ComponentFamily& family, Rng& rng);

// exact matrix of the differential of the parametrization at the
// basepoint, rows = affine parameter directions, columns = quotient
// coordinates of the target form space
Matrix phi_differential(const ComponentFamily& family, const Basepoint& bp,
                        const FormSpace& target);

// the parametrized form itself
PolyForm phi_value(const ComponentFamily& family, const Basepoint& bp);

struct DimensionReport {
    int lower = -1;
    int upper = -1;
    bool certified = false;
    bool fiber_verified = false;
    std::optional<int> table_value;
    bool discrepancy_flag = false;
};

DimensionReport certified_dimension(const ComponentFamily& family, int samples, uint64_t seed);

// rank of v -> L_v omega into the form space modulo span{omega} (and the
// quadric relations when a context is given)
int orbit_dimension(const PolyForm& omega, const std::vector<PolyField>& algebra,
                    const QuadricContext* ctx);

// pencils of hyperplane sections: dimension 2 (h0 - 2)
int rat11_dimension(int h0);

struct CatalogEntry {
    std::string id;
    std::string manifold;
    std::string component;
    int table_dimension = 0;
    std::string plan; // rank-sandwich | orbit-rank | h0-formula | none
    bool buildable = true;
    std::optional<ComponentFamily> family;
    int h0 = 0;
};

std::vector<CatalogEntry> table1_catalog();

struct CatalogResult {
    CatalogEntry entry;
    std::string status; // certified | uncertified | orbit | formula | not-buildable
    int computed = -1;
    bool discrepancy_flag = false;
    bool invariants_ok = false;
    DimensionReport report;
};

CatalogResult run_catalog_row(const CatalogEntry& entry, uint64_t seed);

// the two action foliations behind the orbit rows
PolyForm exc2_action_form();
std::vector<PolyField> sl_algebra_fields(int n); // basis of sl(n) as fields

} // namespace folforge

#endif
