#include "folforge/forms.hpp"

#include <bit>

#include "folforge/linalg.hpp"

namespace folforge {

namespace {
inline int sign_insert(uint32_t mask, int i) {
    // sign of dx_i /\ e_mask -> e_{mask | 1<<i}
    return (std::popcount(mask & ((1u << i) - 1)) % 2 == 0) ? 1 : -1;
}
inline int sign_wedge(uint32_t s, uint32_t t) {
    int inv = 0;
    for (uint32_t tt = t; tt; tt &= tt - 1) {
        int b = std::countr_zero(tt);
        inv += std::popcount(s >> (b + 1));
    }
    return inv % 2 == 0 ? 1 : -1;
}
} // namespace

PolyField radial_field(int nvars, int ngeom) {
    PolyField v;
    v.ngeom = ngeom;
    for (int i = 0; i < ngeom; ++i) v.comp.push_back(MultiPoly::variable(nvars, i));
    return v;
}

PolyField linear_field(const Matrix& m, int nvars) {
    PolyField v;
    v.ngeom = m.rows();
    if (m.rows() != m.cols()) fail("SizeMismatch", "linear_field wants a square matrix");
    for (int i = 0; i < m.rows(); ++i) {
        MultiPoly p(nvars);
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero())
                p = p + MultiPoly::variable(nvars, j).scaled(m.at(i, j));
        v.comp.push_back(p);
    }
    return v;
}

PolyForm::PolyForm(int nvars, int ngeom, int q) : nvars_(nvars), ngeom_(ngeom), q_(q) {
    if (ngeom > nvars || ngeom > 30) fail("BadAmbient", "geometric variable count out of range");
    if (q < 0 || q > ngeom) q_ = q; // forms above top degree are identically zero
}

PolyForm PolyForm::from_poly(const MultiPoly& f, int ngeom) {
    PolyForm a(f.nvars(), ngeom, 0);
    a.add(0, f);
    return a;
}

MultiPoly PolyForm::coeff(uint32_t mask) const {
    auto it = comps_.find(mask);
    return it == comps_.end() ? MultiPoly(nvars_) : it->second;
}

void PolyForm::add(uint32_t mask, const MultiPoly& f) {
    if (std::popcount(mask) != q_) fail("GradingError", "component mask of wrong degree");
    if (f.is_zero()) return;
    auto it = comps_.find(mask);
    if (it == comps_.end()) comps_.emplace(mask, f);
    else {
        it->second = it->second + f;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

PolyForm PolyForm::operator-() const {
    PolyForm r(nvars_, ngeom_, q_);
    for (auto& [m, f] : comps_) r.comps_.emplace(m, -f);
    return r;
}

PolyForm PolyForm::operator+(const PolyForm& o) const {
    if (nvars_ != o.nvars_ || ngeom_ != o.ngeom_ || q_ != o.q_)
        fail("AmbientMismatch", "adding forms of different ambient or degree");
    PolyForm r = *this;
    for (auto& [m, f] : o.comps_) r.add(m, f);
    return r;
}

PolyForm PolyForm::operator-(const PolyForm& o) const { return *this + (-o); }

PolyForm PolyForm::scaled(const Scalar& c) const {
    PolyForm r(nvars_, ngeom_, q_);
    if (c.is_zero()) return r;
    for (auto& [m, f] : comps_) r.comps_.emplace(m, f.scaled(c));
    return r;
}

PolyForm PolyForm::scaled_poly(const MultiPoly& g) const {
    PolyForm r(nvars_, ngeom_, q_);
    if (g.is_zero()) return r;
    for (auto& [m, f] : comps_) {
        MultiPoly p = f * g;
        if (!p.is_zero()) r.comps_.emplace(m, std::move(p));
    }
    return r;
}

bool PolyForm::operator==(const PolyForm& o) const {
    return nvars_ == o.nvars_ && ngeom_ == o.ngeom_ && q_ == o.q_ && comps_ == o.comps_;
}

bool PolyForm::homogeneous_coeff_degree(int* deg) const {
    int d = -1;
    for (auto& [m, f] : comps_) {
        int fd;
        if (!f.is_homogeneous_in_prefix(ngeom_, &fd)) return false;
        if (d == -1) d = fd;
        else if (fd != d) return false;
    }
    if (deg) *deg = d;
    return true;
}

std::vector<MultiPoly> PolyForm::coefficients() const {
    std::vector<MultiPoly> out;
    out.reserve(comps_.size());
    for (auto& [m, f] : comps_) out.push_back(f);
    return out;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (a.nvars() != b.nvars() || a.ngeom() != b.ngeom())
        fail("AmbientMismatch", "wedge of forms on different ambients");
    int q = a.degree() + b.degree();
    PolyForm r(a.nvars(), a.ngeom(), q);
    if (q > a.ngeom()) return r; // above top degree
    for (auto& [s, f] : a.comps())
        for (auto& [t, g] : b.comps()) {
            if (s & t) continue;
            MultiPoly p = f * g;
            if (p.is_zero()) continue;
            int sg = sign_wedge(s, t);
            r.add(s | t, sg < 0 ? -p : p);
        }
    return r;
}

PolyForm ext_d(const PolyForm& a) {
    PolyForm r(a.nvars(), a.ngeom(), a.degree() + 1);
    if (a.degree() + 1 > a.ngeom()) return r;
    for (auto& [s, f] : a.comps())
        for (int i = 0; i < a.ngeom(); ++i) {
            if (s & (1u << i)) continue;
            MultiPoly df = f.derivative(i);
            if (df.is_zero()) continue;
            int sg = sign_insert(s, i);
            r.add(s | (1u << i), sg < 0 ? -df : df);
        }
    return r;
}

PolyForm contract(const PolyField& v, const PolyForm& a) {
    if (a.degree() == 0) fail("DegreeUnderflow", "contracting a 0-form");
    if (v.ngeom != a.ngeom() || (int)v.comp.size() != a.ngeom())
        fail("AmbientMismatch", "field/form ambient mismatch");
    PolyForm r(a.nvars(), a.ngeom(), a.degree() - 1);
    for (auto& [s, f] : a.comps())
        for (uint32_t ss = s; ss; ss &= ss - 1) {
            int i = std::countr_zero(ss);
            if (v.comp[i].is_zero()) continue;
            MultiPoly p = v.comp[i] * f;
            if (p.is_zero()) continue;
            int sg = sign_insert(s & ~(1u << i), i);
            r.add(s & ~(1u << i), sg < 0 ? -p : p);
        }
    return r;
}

PolyForm contract(const std::vector<PolyField>& vs, const PolyForm& a) {
    PolyForm acc = a;
    for (auto& v : vs) acc = contract(v, acc);
    return acc;
}

PolyForm contract_radial(const PolyForm& a) {
    return contract(radial_field(a.nvars(), a.ngeom()), a);
}

PolyForm lie_derivative(const PolyField& v, const PolyForm& a) {
    // Cartan: L_v = i_v d + d i_v
    PolyForm first = contract(v, ext_d(a));
    if (a.degree() == 0) return first;
    return first + ext_d(contract(v, a));
}

IntegrabilityVerdict check_integrable(const PolyForm& a) {
    if (a.is_zero()) fail("ZeroForm", "integrability of the zero form");
    IntegrabilityVerdict v;
    const int q = a.degree();
    PolyForm da = ext_d(a);
    if (q == 1) {
        if (wedge(a, da).is_zero()) {
            v.integrable = true;
        } else {
            v.failed_condition = "wedge";
        }
        return v;
    }
    // coordinate multivector criterion for local decomposability and
    // integrability of q-forms
    std::vector<int> idx(q - 1);
    const int n = a.ngeom();
    auto tuple_check = [&](const std::vector<int>& tup) -> bool {
        std::vector<PolyField> fields;
        for (int i : tup) {
            PolyField f;
            f.ngeom = n;
            for (int k = 0; k < n; ++k)
                f.comp.push_back(MultiPoly::constant(a.nvars(), Scalar(k == i ? 1 : 0)));
            fields.push_back(std::move(f));
        }
        PolyForm alpha = contract(fields, a);
        if (!wedge(alpha, a).is_zero()) {
            v.failed_condition = "decomposability";
            v.witness_tuple = tup;
            return false;
        }
        if (!wedge(alpha, da).is_zero()) {
            v.failed_condition = "integrability";
            v.witness_tuple = tup;
            return false;
        }
        return true;
    };
    // iterate increasing (q-1)-tuples
    auto rec = [&](auto&& self, int pos, int start) -> bool {
        if (pos == q - 1) return tuple_check(idx);
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            if (!self(self, pos + 1, i + 1)) return false;
        }
        return true;
    };
    v.integrable = rec(rec, 0, 0);
    return v;
}

bool check_euler(const PolyForm& a, int m) {
    int d;
    if (!a.homogeneous_coeff_degree(&d) || (d != -1 && d != m))
        fail("NotHomogeneous", "coefficients not homogeneous of the stated degree");
    if (a.degree() > 0 && !contract_radial(a).is_zero())
        fail("NotRadiallyAnnihilated", "form is not annihilated by the radial field");
    PolyForm lhs = contract_radial(ext_d(a));
    return lhs == a.scaled(Scalar(m + a.degree()));
}

PolyForm map_coefficients(const PolyForm& a, int new_nvars, int new_ngeom,
                          const std::vector<MultiPoly>& images) {
    PolyForm r(new_nvars, new_ngeom, a.degree());
    for (auto& [mask, f] : a.comps()) r.add(mask, f.substitute(images));
    return r;
}

std::vector<uint32_t> masks_of_degree(int ngeom, int q) {
    std::vector<uint32_t> out;
    for (uint32_t m = 0; m < (1u << ngeom); ++m)
        if (std::popcount(m) == q) out.push_back(m);
    return out;
}

std::vector<Scalar> form_to_vector(const PolyForm& a, int coeff_degree) {
    auto masks = masks_of_degree(a.ngeom(), a.degree());
    auto monos = monomials_of_degree(a.nvars(), coeff_degree);
    std::vector<Scalar> v(masks.size() * monos.size(), Scalar(0));
    for (size_t mi = 0; mi < masks.size(); ++mi) {
        MultiPoly f = a.coeff(masks[mi]);
        for (auto& t : f.terms()) {
            bool placed = false;
            for (size_t k = 0; k < monos.size(); ++k)
                if (monos[k] == t.e) {
                    v[mi * monos.size() + k] = t.c;
                    placed = true;
                    break;
                }
            if (!placed) fail("BadDegree", "form coefficient outside the stated degree");
        }
    }
    return v;
}

PolyForm form_from_vector(const std::vector<Scalar>& v, int nvars, int ngeom, int q,
                          int coeff_degree) {
    auto masks = masks_of_degree(ngeom, q);
    auto monos = monomials_of_degree(nvars, coeff_degree);
    if (v.size() != masks.size() * monos.size()) fail("SizeMismatch", "form_from_vector");
    PolyForm a(nvars, ngeom, q);
    for (size_t mi = 0; mi < masks.size(); ++mi) {
        MultiPoly f(nvars);
        for (size_t k = 0; k < monos.size(); ++k)
            if (!v[mi * monos.size() + k].is_zero())
                f = f + MultiPoly::monomial(nvars, monos[k], v[mi * monos.size() + k]);
        a.add(masks[mi], f);
    }
    return a;
}

PolyForm pullback_linear(const PolyForm& eta, const Matrix& a) {
    if (a.rows() != eta.ngeom()) fail("SizeMismatch", "pullback matrix rows != target variables");
    const int src = a.cols();
    if (eta.nvars() != eta.ngeom())
        fail("AmbientMismatch", "linear pullback of a form with parameter variables");
    std::vector<MultiPoly> images;
    for (int j = 0; j < a.rows(); ++j) {
        MultiPoly p(src);
        for (int l = 0; l < src; ++l)
            if (!a.at(j, l).is_zero()) p = p + MultiPoly::variable(src, l).scaled(a.at(j, l));
        images.push_back(p);
    }
    std::vector<PolyForm> dy;
    for (int j = 0; j < a.rows(); ++j) {
        PolyForm f(src, src, 1);
        for (int l = 0; l < src; ++l)
            if (!a.at(j, l).is_zero()) f.add(1u << l, MultiPoly::constant(src, a.at(j, l)));
        dy.push_back(f);
    }
    PolyForm out(src, src, eta.degree());
    for (auto& [mask, f] : eta.comps()) {
        PolyForm piece = PolyForm::from_poly(f.substitute(images), src);
        for (uint32_t s = mask; s; s &= s - 1) piece = wedge(piece, dy[std::countr_zero(s)]);
        out = out + piece;
    }
    return out;
}

std::string form_str(const PolyForm& a, const std::vector<std::string>& names) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [mask, f] : a.comps()) {
        std::string base;
        for (uint32_t s = mask; s; s &= s - 1) {
            if (!base.empty()) base += "*";
            base += "d" + names.at(std::countr_zero(s));
        }
        std::string cs = poly_str(f, names);
        std::string piece;
        if (base.empty()) piece = cs;
        else if (cs == "1") piece = base;
        else piece = "(" + cs + ")*" + base;
        out += (first ? "" : " + ") + piece;
        first = false;
    }
    return out;
}

} // namespace folforge
