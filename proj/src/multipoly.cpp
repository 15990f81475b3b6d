#include "folforge/multipoly.hpp"

#include <algorithm>
#include <map>

namespace folforge {

int expo_deg(const Expo& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

int grlex_cmp(const Expo& a, const Expo& b) {
    int da = expo_deg(a), db = expo_deg(b);
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

namespace {
struct GrlexGreater {
    bool operator()(const Expo& a, const Expo& b) const { return grlex_cmp(a, b) > 0; }
};
} // namespace

MultiPoly MultiPoly::constant(int nvars, const Scalar& c) {
    MultiPoly p(nvars);
    if (!c.is_zero()) p.ts_.push_back({Expo(nvars, 0), c});
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
    Expo e(nvars, 0);
    e.at(i) = 1;
    return monomial(nvars, e, Scalar(1));
}

MultiPoly MultiPoly::monomial(int nvars, Expo e, const Scalar& c) {
    MultiPoly p(nvars);
    if ((int)e.size() != nvars) fail("BadExponent", "exponent length != variable count");
    if (!c.is_zero()) p.ts_.push_back({std::move(e), c});
    return p;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (auto& t : ts_) d = std::max(d, expo_deg(t.e));
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (auto& t : ts_) d = std::max(d, t.e[var]);
    return d;
}

bool MultiPoly::is_homogeneous(int* deg) const {
    if (ts_.empty()) {
        if (deg) *deg = -1;
        return true;
    }
    int d = expo_deg(ts_[0].e);
    for (auto& t : ts_)
        if (expo_deg(t.e) != d) return false;
    if (deg) *deg = d;
    return true;
}

int MultiPoly::prefix_degree(int ngeom) const {
    int d = -1;
    for (auto& t : ts_) {
        int s = 0;
        for (int i = 0; i < ngeom; ++i) s += t.e[i];
        d = std::max(d, s);
    }
    return d;
}

bool MultiPoly::is_homogeneous_in_prefix(int ngeom, int* deg) const {
    if (ts_.empty()) {
        if (deg) *deg = -1;
        return true;
    }
    int d = -2;
    for (auto& t : ts_) {
        int s = 0;
        for (int i = 0; i < ngeom; ++i) s += t.e[i];
        if (d == -2) d = s;
        else if (s != d) return false;
    }
    if (deg) *deg = d;
    return true;
}

Scalar MultiPoly::constant_value() const {
    if (ts_.empty()) return Scalar(0);
    if (!is_constant()) fail("NotConstant", "polynomial is not constant");
    return ts_[0].c;
}

bool MultiPoly::uses_var(int var) const {
    for (auto& t : ts_)
        if (t.e[var] > 0) return true;
    return false;
}

const Term& MultiPoly::leading_term() const {
    if (ts_.empty()) fail("ZeroPolynomial", "leading term of zero");
    return ts_.front();
}

Scalar MultiPoly::coeff_of(const Expo& e) const {
    for (auto& t : ts_)
        if (t.e == e) return t.c;
    return Scalar(0);
}

MultiPoly MultiPoly::monic() const {
    if (ts_.empty()) return *this;
    return scaled(ts_.front().c.inverse());
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nv_);
    r.ts_.reserve(ts_.size());
    for (auto& t : ts_) r.ts_.push_back({t.e, -t.c});
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (nv_ != o.nv_) fail("UniverseMismatch", "adding polynomials over different universes");
    MultiPoly r(nv_);
    r.ts_.reserve(ts_.size() + o.ts_.size());
    size_t i = 0, j = 0;
    while (i < ts_.size() && j < o.ts_.size()) {
        int c = grlex_cmp(ts_[i].e, o.ts_[j].e);
        if (c > 0) r.ts_.push_back(ts_[i++]);
        else if (c < 0) r.ts_.push_back(o.ts_[j++]);
        else {
            Scalar s = ts_[i].c + o.ts_[j].c;
            if (!s.is_zero()) r.ts_.push_back({ts_[i].e, s});
            ++i, ++j;
        }
    }
    while (i < ts_.size()) r.ts_.push_back(ts_[i++]);
    while (j < o.ts_.size()) r.ts_.push_back(o.ts_[j++]);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (nv_ != o.nv_) fail("UniverseMismatch", "multiplying polynomials over different universes");
    std::map<Expo, Scalar, GrlexGreater> acc;
    Expo e(nv_, 0);
    for (auto& t : ts_)
        for (auto& u : o.ts_) {
            for (int k = 0; k < nv_; ++k) e[k] = t.e[k] + u.e[k];
            auto it = acc.find(e);
            if (it == acc.end()) acc.emplace(e, t.c * u.c);
            else it->second += t.c * u.c;
        }
    MultiPoly r(nv_);
    r.ts_.reserve(acc.size());
    for (auto& [ee, c] : acc)
        if (!c.is_zero()) r.ts_.push_back({ee, c});
    return r;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
    MultiPoly r(nv_);
    if (c.is_zero()) return r;
    r.ts_.reserve(ts_.size());
    for (auto& t : ts_) r.ts_.push_back({t.e, t.c * c});
    return r;
}

MultiPoly operator*(const Scalar& c, const MultiPoly& p) { return p.scaled(c); }

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly r = constant(nv_, Scalar(1));
    MultiPoly b = *this;
    while (k) {
        if (k & 1) r = r * b;
        if (k >>= 1) b = b * b;
    }
    return r;
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly r(nv_);
    for (auto& t : ts_) {
        if (t.e[var] == 0) continue;
        Expo e = t.e;
        Scalar c = t.c * Scalar(e[var]);
        e[var] -= 1;
        r.ts_.push_back({std::move(e), c});
    }
    // derivative preserves grlex order among surviving terms of equal
    // degree drop, but not across: re-sort to stay canonical
    std::sort(r.ts_.begin(), r.ts_.end(),
              [](const Term& a, const Term& b) { return grlex_cmp(a.e, b.e) > 0; });
    return r;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
    if ((int)images.size() != nv_) fail("UniverseMismatch", "substitution image count");
    int outv = images.empty() ? 0 : images[0].nvars();
    MultiPoly r(outv);
    // cache of images[i]^k
    std::vector<std::vector<MultiPoly>> pw(nv_);
    auto power = [&](int i, int k) -> const MultiPoly& {
        auto& v = pw[i];
        if (v.empty()) v.push_back(MultiPoly::constant(outv, Scalar(1)));
        while ((int)v.size() <= k) v.push_back(v.back() * images[i]);
        return v[k];
    };
    for (auto& t : ts_) {
        MultiPoly m = MultiPoly::constant(outv, t.c);
        for (int i = 0; i < nv_; ++i)
            if (t.e[i] > 0) m = m * power(i, t.e[i]);
        r = r + m;
    }
    return r;
}

Scalar MultiPoly::eval(const std::vector<Scalar>& point) const {
    if ((int)point.size() != nv_) fail("UniverseMismatch", "evaluation point size");
    Scalar acc(0);
    for (auto& t : ts_) {
        Scalar m = t.c;
        for (int i = 0; i < nv_; ++i)
            if (t.e[i] > 0) m *= point[i].pow((unsigned)t.e[i]);
        acc += m;
    }
    return acc;
}

MultiPoly MultiPoly::extended(int new_nvars) const {
    if (new_nvars < nv_) fail("UniverseMismatch", "extended() cannot shrink");
    MultiPoly r(new_nvars);
    for (auto& t : ts_) {
        Expo e = t.e;
        e.resize(new_nvars, 0);
        r.ts_.push_back({std::move(e), t.c});
    }
    return r;
}

MultiPoly MultiPoly::shrunk(int new_nvars) const {
    MultiPoly r(new_nvars);
    for (auto& t : ts_) {
        for (int i = new_nvars; i < nv_; ++i)
            if (t.e[i] != 0) fail("UniverseMismatch", "shrunk() would drop a used variable");
        Expo e(t.e.begin(), t.e.begin() + new_nvars);
        r.ts_.push_back({std::move(e), t.c});
    }
    return r;
}

MultiPoly MultiPoly::coeff_in(int var, int k) const {
    MultiPoly r(nv_);
    for (auto& t : ts_) {
        if (t.e[var] != k) continue;
        Expo e = t.e;
        e[var] = 0;
        r.ts_.push_back({std::move(e), t.c});
    }
    std::sort(r.ts_.begin(), r.ts_.end(),
              [](const Term& a, const Term& b) { return grlex_cmp(a.e, b.e) > 0; });
    return r;
}

void MultiPoly::add_term(Expo e, const Scalar& c) {
    *this = *this + monomial(nv_, std::move(e), c);
}

// ---------------------------------------------------------------- division

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    MultiPoly q(a.nvars()), r = a;
    const Term& lb = b.leading_term();
    while (!r.is_zero()) {
        const Term& lr = r.leading_term();
        Expo e(lr.e.size());
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = lr.e[i] - lb.e[i];
            if (e[i] < 0) fail("NotDivisible", "exact division has a remainder");
        }
        MultiPoly t = MultiPoly::monomial(a.nvars(), std::move(e), lr.c / lb.c);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

bool divides(const MultiPoly& b, const MultiPoly& a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    // plain multivariate division by one divisor; nonzero normal form
    // means not divisible
    MultiPoly r = a;
    const Term& lb = b.leading_term();
    while (!r.is_zero()) {
        const Term& lr = r.leading_term();
        Expo e(lr.e.size());
        bool ok = true;
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = lr.e[i] - lb.e[i];
            if (e[i] < 0) { ok = false; break; }
        }
        if (!ok) return false;
        r = r - MultiPoly::monomial(a.nvars(), std::move(e), lr.c / lb.c) * b;
    }
    return true;
}

// --------------------------------------------------------------------- gcd

namespace {

MultiPoly lc_in(const MultiPoly& p, int v) { return p.coeff_in(v, p.degree_in(v)); }

// pseudo-remainder of a by b in the variable v: lc(b)^(da-db+1) * a mod b
MultiPoly prem(const MultiPoly& a, const MultiPoly& b, int v) {
    int db = b.degree_in(v);
    if (db == 0) return MultiPoly(a.nvars());
    MultiPoly r = a;
    MultiPoly lb = lc_in(b, v);
    int e = a.degree_in(v) - db + 1;
    while (!r.is_zero() && r.degree_in(v) >= db) {
        int dr = r.degree_in(v);
        Expo shift(a.nvars(), 0);
        shift[v] = dr - db;
        MultiPoly s = lc_in(r, v) * MultiPoly::monomial(a.nvars(), shift, Scalar(1));
        r = lb * r - s * b;
        --e;
    }
    for (; e > 0; --e) r = lb * r;
    return r;
}

MultiPoly gcd_univariate(const MultiPoly& a, const MultiPoly& b, int v) {
    MultiPoly r0 = a.monic(), r1 = b.monic();
    if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
    while (!r1.is_zero()) {
        // monic euclidean remainder
        MultiPoly r = r0;
        int db = r1.degree_in(v);
        MultiPoly lb = lc_in(r1, v);
        while (!r.is_zero() && r.degree_in(v) >= db) {
            int dr = r.degree_in(v);
            Expo shift(a.nvars(), 0);
            shift[v] = dr - db;
            MultiPoly s = divide_exact(lc_in(r, v), lb) *
                          MultiPoly::monomial(a.nvars(), shift, Scalar(1));
            r = r - s * r1;
        }
        r0 = r1;
        r1 = r;
    }
    return r0.monic();
}

MultiPoly content_in(const MultiPoly& p, int v) {
    MultiPoly g(p.nvars());
    for (int k = 0; k <= p.degree_in(v); ++k) {
        MultiPoly c = p.coeff_in(v, k);
        if (!c.is_zero()) g = poly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

MultiPoly primitive_in(const MultiPoly& p, int v) { return divide_exact(p, content_in(p, v)); }

// subresultant polynomial remainder sequence on v-primitive inputs
MultiPoly gcd_subresultant(MultiPoly f, MultiPoly g, int v) {
    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
    if (g.degree_in(v) == 0) return MultiPoly::constant(f.nvars(), Scalar(1));
    int delta = f.degree_in(v) - g.degree_in(v);
    MultiPoly beta = MultiPoly::constant(f.nvars(), Scalar(delta % 2 == 0 ? -1 : 1));
    MultiPoly psi = MultiPoly::constant(f.nvars(), Scalar(-1));
    MultiPoly rp = f, rc = g;
    while (true) {
        MultiPoly rem = prem(rp, rc, v);
        if (rem.is_zero()) return primitive_in(rc, v).monic();
        MultiPoly rn = divide_exact(rem, beta);
        MultiPoly lc = lc_in(rc, v);
        if (delta > 0) {
            MultiPoly num = (-lc).pow((unsigned)delta);
            psi = (delta == 1) ? num : divide_exact(num, psi.pow((unsigned)(delta - 1)));
        }
        int delta_n = rc.degree_in(v) - rn.degree_in(v);
        beta = -lc * psi.pow((unsigned)delta_n);
        rp = rc;
        rc = rn;
        delta = delta_n;
    }
}

} // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.nvars() != b.nvars()) fail("UniverseMismatch", "gcd over different universes");
    const int nv = a.nvars();
    if (a.is_constant() || b.is_constant()) return MultiPoly::constant(nv, Scalar(1));

    // variables in play, weighted by how often they occur
    std::vector<int> freq(nv, 0);
    for (auto& t : a.terms())
        for (int i = 0; i < nv; ++i)
            if (t.e[i] > 0) freq[i]++;
    for (auto& t : b.terms())
        for (int i = 0; i < nv; ++i)
            if (t.e[i] > 0) freq[i]++;
    std::vector<int> used;
    for (int i = 0; i < nv; ++i)
        if (freq[i] > 0) used.push_back(i);

    if (used.size() == 1) return gcd_univariate(a, b, used[0]);

    // recurse on the least-frequent variable
    int v = used[0];
    for (int i : used)
        if (freq[i] < freq[v]) v = i;

    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly pa = divide_exact(a, ca), pb = divide_exact(b, cb);
    MultiPoly cg = poly_gcd(ca, cb);
    MultiPoly pg = (pa.degree_in(v) == 0 || pb.degree_in(v) == 0)
                       ? MultiPoly::constant(nv, Scalar(1))
                       : gcd_subresultant(pa, pb, v);
    return (cg * pg).monic();
}

MultiPoly poly_gcd_many(const std::vector<MultiPoly>& ps) {
    if (ps.empty()) fail("ZeroPolynomial", "gcd of empty list");
    MultiPoly g = ps[0];
    for (size_t i = 1; i < ps.size(); ++i) {
        g = poly_gcd(g, ps[i]);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g.monic();
}

MultiPoly squarefree_part(const MultiPoly& p) {
    if (p.is_zero()) fail("ZeroPolynomial", "squarefree part of zero");
    MultiPoly g = p;
    for (int v = 0; v < p.nvars(); ++v) {
        if (p.degree_in(v) == 0) continue;
        g = poly_gcd(g, p.derivative(v));
        if (g.is_constant()) break;
    }
    if (g.is_constant()) return p.monic();
    return divide_exact(p, g).monic();
}

// -------------------------------------------------------------- resultants

MultiPoly det_poly(std::vector<std::vector<MultiPoly>> m) {
    const size_t n = m.size();
    if (n == 0) fail("BadMatrix", "determinant of empty matrix");
    const int nv = m[0][0].nvars();
    int sign = 1;
    MultiPoly prev = MultiPoly::constant(nv, Scalar(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return MultiPoly(nv);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    MultiPoly d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

MultiPoly resultant_univ(const MultiPoly& u, const MultiPoly& v, int var) {
    if (u.is_zero() || v.is_zero()) fail("ZeroPolynomial", "resultant of zero polynomial");
    const int nv = u.nvars();
    int m = u.degree_in(var), n = v.degree_in(var);
    if (m == 0 && n == 0) return MultiPoly::constant(nv, Scalar(1));
    if (m == 0) return u.pow((unsigned)n);
    if (n == 0) return v.pow((unsigned)m);
    std::vector<std::vector<MultiPoly>> syl(m + n, std::vector<MultiPoly>(m + n, MultiPoly(nv)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) syl[i][i + j] = u.coeff_in(var, m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) syl[n + i][i + j] = v.coeff_in(var, n - j);
    return det_poly(std::move(syl));
}

MultiPoly discriminant_univ(const MultiPoly& u, int var) {
    return resultant_univ(u, u.derivative(var), var);
}

std::vector<Expo> monomials_of_degree(int nvars, int deg) {
    std::vector<Expo> out;
    Expo e(nvars, 0);
    // depth-first, biggest exponent on the smallest index first = grlex desc
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars - 1) {
            e[pos] = left;
            out.push_back(e);
            e[pos] = 0;
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[pos] = k;
            self(self, pos + 1, left - k);
        }
        e[pos] = 0;
    };
    if (deg < 0) return out;
    if (nvars == 0) {
        if (deg == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, deg);
    return out;
}

// ---------------------------------------------------------------- printing

std::string poly_str(const MultiPoly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& t : p.terms()) {
        Scalar c = t.c;
        std::string sign;
        if (first) {
            if (c.is_rational() && c.re() < 0) {
                sign = "-";
                c = -c;
            }
        } else {
            if (c.is_rational() && c.re() < 0) {
                sign = " - ";
                c = -c;
            } else {
                sign = " + ";
            }
        }
        std::string mono;
        for (size_t i = 0; i < t.e.size(); ++i) {
            if (t.e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (t.e[i] > 1) mono += "^" + std::to_string(t.e[i]);
        }
        std::string cs = c.is_rational() ? c.str() : "(" + c.str() + ")";
        std::string term;
        if (mono.empty()) term = cs;
        else if (c.is_one()) term = mono;
        else term = cs + "*" + mono;
        out += sign + term;
        first = false;
    }
    return out;
}

} // namespace folforge
