#include "folforge/foliation.hpp"

#include <algorithm>
#include <map>

#include "folforge/quadric.hpp"

namespace folforge {

namespace {

struct MonoIndex {
    std::vector<Expo> monos;
    std::map<Expo, int, bool (*)(const Expo&, const Expo&)> pos;

    explicit MonoIndex(int nvars, int deg)
        : monos(monomials_of_degree(nvars, deg)),
          pos([](const Expo& a, const Expo& b) { return grlex_cmp(a, b) > 0; }) {
        for (size_t k = 0; k < monos.size(); ++k) pos.emplace(monos[k], (int)k);
    }
    int size() const { return (int)monos.size(); }
    int at(const Expo& e) const {
        auto it = pos.find(e);
        if (it == pos.end()) fail("BadDegree", "monomial outside the indexed degree");
        return it->second;
    }
};

void scatter(const MultiPoly& p, const MonoIndex& idx, int row_offset, int col, Matrix& m) {
    for (auto& t : p.terms()) m.at(row_offset + idx.at(t.e), col) += t.c;
}

bool is_linear_field(const PolyField& v) {
    for (auto& c : v.comp) {
        if (c.is_zero()) continue;
        int d;
        if (!c.is_homogeneous(&d) || d != 1) return false;
    }
    return true;
}

} // namespace

FoliationSpec make_foliation_spec(const PolyForm& omega) {
    if (omega.is_zero()) fail("ZeroForm", "foliation from the zero form");
    FoliationSpec s;
    s.q = omega.degree();
    s.n = omega.ngeom() - 1;
    s.omega = omega;
    int m;
    if (!omega.homogeneous_coeff_degree(&m))
        fail("NotHomogeneous", "foliation form must have homogeneous coefficients");
    if (!contract_radial(omega).is_zero())
        fail("NotRadiallyAnnihilated", "foliation form must be annihilated by the radial field");
    if (!check_integrable(omega).integrable) fail("NotIntegrable", "foliation form must be integrable");
    if (!singular_divisorial_part(omega).is_constant())
        fail("GcdNotOne", "singular set has a divisorial part");
    s.degree = m - 1;
    s.normal_degree = s.degree + s.q + 1;
    s.canonical_degree = s.degree + s.q - s.n;
    int leaf_dim = s.n - s.q;
    if (leaf_dim <= 0) fail("BadAmbient", "codimension must be below the dimension");
    s.slope = Rat(leaf_dim - s.degree, leaf_dim);
    s.slope.canonicalize();
    return s;
}

FormReport inspect_form(const PolyForm& omega) {
    FormReport r;
    if (omega.is_zero()) fail("ZeroForm", "inspecting the zero form");
    r.radial_ok = contract_radial(omega).is_zero();
    r.integrable = check_integrable(omega).integrable;
    int m = -1;
    omega.homogeneous_coeff_degree(&m);
    r.degree = m >= 1 ? m - 1 : -1;
    r.singular_part = singular_divisorial_part(omega);
    return r;
}

MultiPoly singular_divisorial_part(const PolyForm& omega) {
    if (omega.is_zero()) fail("ZeroForm", "divisorial part of the zero form");
    return poly_gcd_many(omega.coefficients());
}

int degree_of(const PolyForm& omega, DegreeRoute route, Rng& rng) {
    int m;
    if (!omega.homogeneous_coeff_degree(&m) || m < 0)
        fail("NotHomogeneous", "degree of an inhomogeneous form");
    if (route == DegreeRoute::CoefficientDegree) return m - 1;

    if (!singular_divisorial_part(omega).is_constant())
        fail("GcdNotOne", "tangency route needs a form with trivial divisorial part");
    const int q = omega.degree();
    const int n1 = omega.ngeom();
    for (int attempt = 0; attempt < 16; ++attempt) {
        Matrix b(n1, q + 1);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j <= q; ++j) b.at(i, j) = Scalar(rng.range(-5, 5));
        PolyForm pulled = pullback_linear(omega, b);
        PolyForm top = ext_d(pulled);
        MultiPoly p = top.coeff((1u << (q + 1)) - 1);
        if (p.is_zero()) continue;
        // the section of O(d) on the embedded P^q cut out by the pullback
        return p.total_degree();
    }
    fail("DegenerateEmbedding", "no non-degenerate linear embedding found in 16 attempts");
}

PolyForm make_log_family(const std::vector<Scalar>& lambda, const std::vector<MultiPoly>& f) {
    const size_t k = f.size();
    if (k < 2 || lambda.size() != k) fail("ResidueConstraintViolated", "need k >= 2 residues and polynomials");
    const int nv = f[0].nvars();
    Scalar balance(0);
    std::vector<int> deg(k);
    for (size_t i = 0; i < k; ++i) {
        int d;
        if (f[i].is_zero() || !f[i].is_homogeneous(&d))
            fail("InhomogeneousInput", "log family wants nonzero homogeneous polynomials");
        deg[i] = d;
        balance += lambda[i] * Scalar(d);
    }
    if (!balance.is_zero()) fail("ResidueConstraintViolated", "sum lambda_i deg f_i != 0");
    PolyForm omega(nv, nv, 1);
    for (size_t i = 0; i < k; ++i) {
        MultiPoly partial = MultiPoly::constant(nv, lambda[i]);
        for (size_t j = 0; j < k; ++j)
            if (j != i) partial = partial * f[j];
        omega = omega + ext_d(PolyForm::from_poly(f[i], nv)).scaled_poly(partial);
    }
    return omega;
}

PolyForm make_linear_pullback(const Matrix& a, const PolyForm& eta) {
    if (a.rows() > a.cols()) fail("RankDeficientProjection", "projection matrix has too many rows");
    if (rank_of(a) != a.rows()) fail("RankDeficientProjection", "projection matrix is rank deficient");
    return pullback_linear(eta, a);
}

std::vector<PolyForm> tangent_form_solve(const std::vector<PolyField>& fields, int coeffdeg,
                                         const QuadricContext* ctx) {
    if (coeffdeg < 1) fail("BadDegree", "coefficient degree must be positive");
    int n1 = ctx ? ctx->nvars() : (fields.empty() ? 0 : fields[0].ngeom);
    if (!fields.empty()) n1 = fields[0].ngeom;
    if (n1 == 0) fail("BadAmbient", "no ambient for tangent form solve");
    for (auto& v : fields) {
        if (v.ngeom != n1 || (int)v.comp.size() != n1) fail("AmbientMismatch", "field ambient");
        if (!is_linear_field(v)) fail("NotLinearField", "tangent form solve wants linear fields");
    }
    MonoIndex unk(n1, coeffdeg);
    MonoIndex eq(n1, coeffdeg + 1);
    const int ncols = n1 * unk.size();
    const int blocks = 1 + (int)fields.size();
    Matrix m(blocks * eq.size(), ncols);
    for (int i = 0; i < n1; ++i)
        for (int k = 0; k < unk.size(); ++k) {
            const int col = i * unk.size() + k;
            MultiPoly mono = MultiPoly::monomial(n1, unk.monos[k], Scalar(1));
            // i_R block
            scatter(mono * MultiPoly::variable(n1, i), eq, 0, col, m);
            // field blocks
            for (size_t fi = 0; fi < fields.size(); ++fi) {
                MultiPoly contrib = mono * fields[fi].comp[i];
                if (ctx) contrib = ctx->reduce(contrib);
                scatter(contrib, eq, (int)(fi + 1) * eq.size(), col, m);
            }
        }
    RankKernel rk = rank_kernel(m);
    std::vector<PolyForm> basis;
    for (auto& v : rk.kernel) {
        PolyForm w(n1, n1, 1);
        for (int i = 0; i < n1; ++i) {
            MultiPoly p(n1);
            for (int k = 0; k < unk.size(); ++k)
                if (!v[i * unk.size() + k].is_zero())
                    p = p + MultiPoly::monomial(n1, unk.monos[k], v[i * unk.size() + k]);
            w.add(1u << i, p);
        }
        basis.push_back(std::move(w));
    }
    return basis;
}

bool closed_one_form_check(const PolyForm& omega, const MultiPoly& h) {
    if (h.is_zero()) fail("ZeroDenominator", "closed form check with zero denominator");
    PolyForm lhs = ext_d(omega).scaled_poly(h);
    PolyForm rhs = wedge(ext_d(PolyForm::from_poly(h, omega.ngeom())), omega);
    return lhs == rhs;
}

namespace {
PolyForm divide_form_exact(const PolyForm& a, const MultiPoly& h) {
    PolyForm r(a.nvars(), a.ngeom(), a.degree());
    for (auto& [mask, f] : a.comps()) r.add(mask, divide_exact(f, h));
    return r;
}
} // namespace

PolyForm invariant_divisor_obstruction(const PolyForm& omega, const PolyForm& eta_cleared,
                                       const MultiPoly& h, int m) {
    if (h.is_zero()) fail("ZeroDenominator", "zero clearing factor");
    PolyForm top = wedge(eta_cleared, omega);
    PolyForm cleared = h.is_constant() ? top.scaled(h.constant_value().inverse())
                                       : divide_form_exact(top, h);
    return cleared + ext_d(omega).scaled(Scalar(m));
}

std::vector<MultiPoly> map_component_solve(const PolyForm& omega, int d) {
    const int n1 = omega.ngeom();
    PolyForm dw = ext_d(omega);
    int mc;
    if (!dw.homogeneous_coeff_degree(&mc)) fail("NotHomogeneous", "map component solve");
    MonoIndex unk(n1, d);
    // rows: components of dP /\ dw, a (q+2)-form with coefficients of
    // degree (d - 1) + mc
    auto masks = masks_of_degree(n1, omega.degree() + 2);
    MonoIndex eq(n1, d - 1 + std::max(mc, 0));
    Matrix m((int)masks.size() * eq.size(), unk.size());
    for (int k = 0; k < unk.size(); ++k) {
        MultiPoly mono = MultiPoly::monomial(n1, unk.monos[k], Scalar(1));
        PolyForm w = wedge(ext_d(PolyForm::from_poly(mono, n1)), dw);
        for (size_t mi = 0; mi < masks.size(); ++mi)
            scatter(w.coeff(masks[mi]), eq, (int)mi * eq.size(), k, m);
    }
    RankKernel rk = rank_kernel(m);
    std::vector<MultiPoly> out;
    for (auto& v : rk.kernel) {
        MultiPoly p(n1);
        for (int k = 0; k < unk.size(); ++k)
            if (!v[k].is_zero()) p = p + MultiPoly::monomial(n1, unk.monos[k], v[k]);
        out.push_back(std::move(p));
    }
    return out;
}

namespace {
// kernel of { constant v : i_v a = 0, i_v da = 0 } as coordinate vectors
std::vector<Vec> inessential_directions(const PolyForm& a) {
    const int n1 = a.ngeom();
    std::vector<Vec> cols; // per basis direction, the flattened conditions
    std::vector<Vec> rows_t;
    for (int i = 0; i < n1; ++i) {
        PolyField e;
        e.ngeom = n1;
        for (int k = 0; k < n1; ++k)
            e.comp.push_back(MultiPoly::constant(a.nvars(), Scalar(k == i ? 1 : 0)));
        int da_deg, a_deg;
        a.homogeneous_coeff_degree(&a_deg);
        PolyForm da = ext_d(a);
        da.homogeneous_coeff_degree(&da_deg);
        Vec v1 = form_to_vector(contract(e, a), std::max(a_deg, 0));
        Vec v2 = da.is_zero() || da.degree() < 1
                     ? Vec{}
                     : form_to_vector(contract(e, da), std::max(da_deg, 0));
        Vec all = v1;
        all.insert(all.end(), v2.begin(), v2.end());
        rows_t.push_back(std::move(all));
    }
    // unknown v: columns are directions; build matrix with rows = conditions
    Matrix m((int)rows_t[0].size(), n1);
    for (int i = 0; i < n1; ++i)
        for (size_t r = 0; r < rows_t[i].size(); ++r) m.at((int)r, i) = rows_t[i][r];
    return rank_kernel(m).kernel;
}
} // namespace

int essential_variables(const PolyForm& a) {
    if (a.is_zero()) fail("ZeroForm", "essential variables of the zero form");
    if (!a.homogeneous_coeff_degree(nullptr))
        fail("NotHomogeneous", "essential variables of an inhomogeneous form");
    return a.ngeom() - (int)inessential_directions(a).size();
}

namespace {

// linear forms annihilating every direction in K
std::vector<MultiPoly> annihilator_forms(const std::vector<Vec>& k, int n1) {
    std::vector<MultiPoly> out;
    if (k.empty()) {
        for (int i = 0; i < n1; ++i) out.push_back(MultiPoly::variable(n1, i));
        return out;
    }
    RankKernel rk = rank_kernel(Matrix::from_rows(k));
    for (auto& v : rk.kernel) {
        MultiPoly p(n1);
        for (int i = 0; i < n1; ++i)
            if (!v[i].is_zero()) p = p + MultiPoly::variable(n1, i).scaled(v[i]);
        out.push_back(p.monic());
    }
    return out;
}

bool proportional_forms(const PolyForm& a, const PolyForm& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    // match the first nonzero coefficient and compare exactly
    auto& [mask, f] = *b.comps().begin();
    MultiPoly fa = a.coeff(mask);
    if (fa.is_zero()) return false;
    const Term& lb = f.leading_term();
    Scalar ca = fa.coeff_of(lb.e);
    if (ca.is_zero()) return false;
    return a == b.scaled(ca / lb.c);
}

} // namespace

Classification classify_low_degree(const PolyForm& omega) {
    Classification out;
    int m;
    if (!omega.homogeneous_coeff_degree(&m)) fail("NotHomogeneous", "classification input");
    out.degree = m - 1;
    const int q = omega.degree();
    const int n1 = omega.ngeom();
    if (out.degree != 0 && out.degree != 1)
        fail("NotLowDegree", "classification only covers degree 0 and 1");

    if (out.degree == 0) {
        auto k = inessential_directions(omega);
        out.essential_count = n1 - (int)k.size();
        out.projection_forms = annihilator_forms(k, n1);
        if (out.essential_count != q + 1)
            fail("ClassificationIncomplete",
                 "degree-0 form does not reduce to q+1 essential linear forms");
        out.linear_projection = true;
        return out;
    }

    PolyForm dw = ext_d(omega);
    auto kdirs = inessential_directions(dw);
    out.essential_count = n1 - (int)kdirs.size();

    // case: linear pullback of a vector-field foliation (dw lives on at
    // most q+2 essential variables)
    if (out.essential_count <= q + 2 && q + 2 <= n1) {
        // adapted coordinates: complement columns then kernel columns
        std::vector<int> pivots;
        if (!kdirs.empty()) pivots = rank_kernel(Matrix::from_rows(kdirs)).pivot_cols;
        else {
            for (int i = 0; i < n1; ++i) pivots.push_back(i);
        }
        Matrix t(n1, n1);
        int col = 0;
        for (int p : pivots) t.at(p, col++) = Scalar(1);
        for (auto& kv : kdirs) {
            for (int i = 0; i < n1; ++i) t.at(i, col) = kv[i];
            ++col;
        }
        PolyForm dwz = pullback_linear(dw, t);
        // solve dwz = i_X vol on the first q+2 coordinates
        const int wdim = q + 2;
        int rows_deg = 1;
        MonoIndex eq(n1, rows_deg);
        auto masks = masks_of_degree(n1, q + 1);
        Matrix sys((int)masks.size() * eq.size(), wdim * wdim);
        PolyForm vol(n1, n1, wdim);
        vol.add((1u << wdim) - 1, MultiPoly::constant(n1, Scalar(1)));
        for (int j = 0; j < wdim; ++j)
            for (int l = 0; l < wdim; ++l) {
                PolyField x;
                x.ngeom = n1;
                for (int k = 0; k < n1; ++k)
                    x.comp.push_back(k == j ? MultiPoly::variable(n1, l) : MultiPoly(n1));
                PolyForm gen = contract(x, vol);
                for (size_t mi = 0; mi < masks.size(); ++mi)
                    scatter(gen.coeff(masks[mi]), eq, (int)mi * eq.size(), j * wdim + l, sys);
            }
        Vec rhs((int)masks.size() * eq.size(), Scalar(0));
        for (size_t mi = 0; mi < masks.size(); ++mi) {
            MultiPoly f = dwz.coeff(masks[mi]);
            for (auto& tterm : f.terms()) {
                // row index inside block mi
                rhs[mi * eq.size() + eq.at(tterm.e)] = tterm.c;
            }
        }
        if (solve_affine(sys, rhs).has_value()) out.vector_field_case = true;
    }

    // case: fibration by q linear forms and one quadric
    auto linear = map_component_solve(omega, 1);
    auto quad = map_component_solve(omega, 2);
    if ((int)linear.size() == q) {
        // products of the linear solutions
        std::vector<Vec> products;
        auto monos2 = monomials_of_degree(n1, 2);
        auto flatten2 = [&](const MultiPoly& p) {
            Vec v(monos2.size(), Scalar(0));
            for (auto& t : p.terms()) {
                for (size_t kk = 0; kk < monos2.size(); ++kk)
                    if (monos2[kk] == t.e) {
                        v[kk] = t.c;
                        break;
                    }
            }
            return v;
        };
        for (size_t i = 0; i < linear.size(); ++i)
            for (size_t j = i; j < linear.size(); ++j)
                products.push_back(flatten2(linear[i] * linear[j]));
        int base = rank_of_rows(products);
        if ((int)quad.size() == base + 1) {
            // find a quadric solution outside the product span
            for (auto& cand : quad) {
                auto stack = products;
                stack.push_back(flatten2(cand));
                if (rank_of_rows(stack) == base + 1) {
                    // verify d(omega) ~ dL1 /\ ... /\ dLq /\ dQ exactly
                    PolyForm model(n1, n1, 0);
                    model.add(0, MultiPoly::constant(n1, Scalar(1)));
                    for (auto& l : linear) model = wedge(model, ext_d(PolyForm::from_poly(l, n1)));
                    model = wedge(model, ext_d(PolyForm::from_poly(cand, n1)));
                    if (!model.is_zero() && proportional_forms(dw, model)) {
                        out.fibration_case = true;
                        out.linear_components = linear;
                        out.quadric_component = cand;
                    }
                    break;
                }
            }
        }
    }

    if (!out.fibration_case && !out.vector_field_case)
        fail("ClassificationIncomplete", "degree-1 form fits neither normal form");
    return out;
}

bool deformation_limit_check(const MultiPoly& q2, const MultiPoly& h1, const MultiPoly& h2) {
    int dq, d1, d2;
    if (!q2.is_homogeneous(&dq) || !h1.is_homogeneous(&d1) || !h2.is_homogeneous(&d2) || dq != 2 ||
        d1 != 1 || d2 != 1)
        fail("DegreeMismatch", "deformation check wants deg Q = 2 and deg H_i = 1");
    const int n1 = q2.nvars();
    const int nv = n1 + 1; // extra deformation parameter
    MultiPoly qe = q2.extended(nv), a = h1.extended(nv), b = h2.extended(nv);
    MultiPoly eps = MultiPoly::variable(nv, n1);
    MultiPoly one = MultiPoly::constant(nv, Scalar(1));
    auto d_of = [&](const MultiPoly& p) { return ext_d(PolyForm::from_poly(p, n1)); };
    PolyForm omega_eps = d_of(a).scaled_poly((one + eps.scaled(Scalar(2))) * qe * b) -
                         d_of(b).scaled_poly(qe * a) - d_of(qe).scaled_poly(eps * a * b);

    // (i) integrability identically in the parameter
    if (!wedge(omega_eps, ext_d(omega_eps)).is_zero()) return false;

    // (ii) residue balance (1+2e)*deg H1 - deg H2 - e*deg Q = 0
    MultiPoly balance = (one + eps.scaled(Scalar(2))).scaled(Scalar(d1)) -
                        one.scaled(Scalar(d2)) - eps.scaled(Scalar(dq));
    if (!balance.is_zero()) return false;

    // (iii) the limit slice equals Q (H2 dH1 - H1 dH2) exactly
    std::vector<MultiPoly> at0;
    for (int i = 0; i < n1; ++i) at0.push_back(MultiPoly::variable(n1, i));
    at0.push_back(MultiPoly(n1));
    PolyForm slice = map_coefficients(omega_eps, n1, n1, at0);
    PolyForm expect = make_log_family({Scalar(1), Scalar(-1)}, {h1, h2}).scaled_poly(q2);
    return slice == expect;
}

int orbit_rank(const PolyForm& omega, const std::vector<PolyField>& fields,
               const std::vector<Vec>& extra_relations) {
    int m;
    if (!omega.homogeneous_coeff_degree(&m))
        fail("NotHomogeneous", "orbit rank of an inhomogeneous form");
    std::vector<Vec> base = extra_relations;
    base.push_back(form_to_vector(omega, m));
    int base_rank = rank_of_rows(base);
    std::vector<Vec> stack = base;
    for (auto& v : fields) {
        if (v.ngeom != omega.ngeom()) fail("AmbientMismatch", "orbit field ambient");
        if (!is_linear_field(v)) fail("NotLinearField", "orbit rank wants linear fields");
        stack.push_back(form_to_vector(lie_derivative(v, omega), m));
    }
    return rank_of_rows(stack) - base_rank;
}

} // namespace folforge
