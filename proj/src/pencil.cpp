#include "folforge/pencil.hpp"

#include <algorithm>
#include <map>

#include "folforge/linalg.hpp"

namespace folforge {

namespace {
long igcd(long a, long b) {
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}
} // namespace

Pencil make_pencil(const MultiPoly& f, const MultiPoly& g, int p, int q) {
    if (p < 1 || q < 1 || igcd(p, q) != 1)
        fail("InvariantViolation", "multiplicities must be coprime positive integers");
    int df, dg;
    if (f.is_zero() || g.is_zero() || !f.is_homogeneous(&df) || !g.is_homogeneous(&dg))
        fail("InvariantViolation", "pencil wants nonzero homogeneous polynomials");
    if (p * df != q * dg) fail("InvariantViolation", "p deg f != q deg g");
    if (!poly_gcd(f, g).is_constant()) fail("InvariantViolation", "f and g share a factor");
    return Pencil{f, g, p, q, p * df};
}

PolyForm pencil_form(const Pencil& pencil) {
    const int nv = pencil.f.nvars();
    PolyForm df = ext_d(PolyForm::from_poly(pencil.f, nv));
    PolyForm dg = ext_d(PolyForm::from_poly(pencil.g, nv));
    return df.scaled_poly(pencil.g.scaled(Scalar(pencil.p))) -
           dg.scaled_poly(pencil.f.scaled(Scalar(pencil.q)));
}

MultiPoly pencil_member(const Pencil& pencil, const Scalar& alpha, const Scalar& beta) {
    return pencil.f.pow((unsigned)pencil.p).scaled(beta) -
           pencil.g.pow((unsigned)pencil.q).scaled(alpha);
}

bool is_non_reduced(const MultiPoly& member) {
    if (member.is_zero()) fail("ZeroPolynomial", "reducedness of the zero polynomial");
    return squarefree_part(member) != member.monic();
}

// ----------------------------------------------------------- root finding

namespace {

std::vector<mpz_class> divisors_of(const mpz_class& n_abs) {
    // trial division, then Pollard-Brent rho for what remains; a cofactor
    // that resists factoring is treated as prime, which can only shrink
    // the candidate list (the counts stay valid lower bounds)
    std::map<mpz_class, int> fac;
    mpz_class n = n_abs;
    for (long p = 2; p < 100000 && n > 1; p = (p == 2 ? 3 : p + 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                ++fac[p];
                n /= p;
            }
        }
        if (mpz_class(p) * p > n) break;
    }
    std::vector<mpz_class> stack;
    if (n > 1) stack.push_back(n);
    gmp_randclass rnd(gmp_randinit_default);
    rnd.seed(12345u);
    int attempts = 0;
    while (!stack.empty()) {
        mpz_class m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (mpz_probab_prime_p(m.get_mpz_t(), 25)) {
            ++fac[m];
            continue;
        }
        if (++attempts > 64) {
            ++fac[m]; // give up: treat as prime
            continue;
        }
        // Pollard rho
        mpz_class c = rnd.get_z_range(m - 1) + 1;
        mpz_class x = rnd.get_z_range(m), y = x, d = 1;
        int steps = 0;
        while (d == 1 && steps < 1 << 18) {
            x = (x * x + c) % m;
            y = (y * y + c) % m;
            y = (y * y + c) % m;
            mpz_class diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
            ++steps;
        }
        if (d > 1 && d < m) {
            stack.push_back(d);
            stack.push_back(m / d);
        } else {
            stack.push_back(m); // retry with a new constant
        }
    }
    std::vector<mpz_class> divs = {1};
    for (auto& [p, e] : fac) {
        size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) {
                if (divs.size() > 20000) return divs; // cap
                divs.push_back(divs[i] * pk);
            }
        }
    }
    return divs;
}

} // namespace

std::vector<Rat> rational_roots(const MultiPoly& p, int var) {
    if (p.is_zero()) fail("ZeroPolynomial", "roots of the zero polynomial");
    int d = p.degree_in(var);
    // must be univariate in `var`
    for (auto& t : p.terms())
        for (size_t i = 0; i < t.e.size(); ++i)
            if ((int)i != var && t.e[i] != 0)
                fail("NotUnivariate", "rational roots of a multivariate polynomial");
    std::vector<Rat> roots;
    if (d == 0) return roots;
    // integer coefficients, content out
    mpz_class den_lcm = 1;
    for (auto& t : p.terms()) {
        if (!t.c.is_rational()) fail("NotRational", "rational root finding over Q only");
        mpz_class den = t.c.re().get_den(), g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
        den_lcm = den_lcm / g * den;
    }
    std::vector<mpz_class> c(d + 1, mpz_class(0));
    for (auto& t : p.terms()) {
        Rat v = t.c.re() * den_lcm;
        c[t.e[var]] = v.get_num();
    }
    // strip the root at zero
    int v0 = 0;
    while (c[v0] == 0) ++v0;
    if (v0 > 0) {
        roots.push_back(Rat(0));
        c.erase(c.begin(), c.begin() + v0);
        d -= v0;
    }
    if (d == 0) return roots;
    mpz_class content = 0;
    for (auto& x : c) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    for (auto& x : c) x /= content;

    auto eval_at = [&](const Rat& r) {
        Rat acc = 0;
        for (int k = d; k >= 0; --k) acc = acc * r + Rat(c[k]);
        return acc == 0;
    };

    if (d == 1) {
        Rat r(-c[0], c[1]);
        r.canonicalize();
        roots.push_back(r);
    } else if (d == 2) {
        mpz_class disc = c[1] * c[1] - 4 * c[2] * c[0];
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
            for (int sign : {1, -1}) {
                Rat r(-c[1] + sign * s, 2 * c[2]);
                r.canonicalize();
                if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
        }
    } else {
        mpz_class tc = abs(c[0]), lc = abs(c[d]);
        auto nums = divisors_of(tc), dens = divisors_of(lc);
        for (auto& a : nums)
            for (auto& b : dens) {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                if (g != 1) continue;
                for (int sign : {1, -1}) {
                    Rat r(sign * a, b);
                    r.canonicalize();
                    if (eval_at(r) && std::find(roots.begin(), roots.end(), r) == roots.end())
                        roots.push_back(r);
                }
            }
    }
    std::sort(roots.begin(), roots.end(), [](const Rat& a, const Rat& b) { return a < b; });
    return roots;
}

// -------------------------------------------------------------- fiber count

FiberBounds multiple_fiber_bounds(const Pencil& pencil, int lines, uint64_t seed) {
    if (lines < 2) fail("BadInput", "need at least two sample lines");
    Rng rng(seed);
    const int nv = pencil.f.nvars();
    FiberBounds out;
    MultiPoly fp = pencil.f.pow((unsigned)pencil.p);
    MultiPoly gq = pencil.g.pow((unsigned)pencil.q);
    bool f_bad = is_non_reduced(fp);
    bool g_bad = is_non_reduced(gq);
    if (f_bad) out.witnesses.push_back({Scalar(0), Scalar(1)});
    if (g_bad) out.witnesses.push_back({Scalar(1), Scalar(0)});

    // member at finite lambda restricted to a line, in variables (t, lambda)
    MultiPoly disc_gcd(2);
    int good_lines = 0, attempts = 0;
    while (good_lines < lines) {
        if (++attempts > 16 + lines) fail("DegenerateLine", "could not sample generic lines");
        std::vector<MultiPoly> images;
        for (int i = 0; i < nv; ++i) {
            // x_i = a_i t + b_i over the (t, lambda) universe
            MultiPoly a = MultiPoly::constant(2, Scalar(rng.range(-4, 4)));
            MultiPoly b = MultiPoly::constant(2, Scalar(rng.range(-4, 4)));
            images.push_back(MultiPoly::variable(2, 0) * a + b);
        }
        MultiPoly ft = fp.substitute(images);
        MultiPoly gt = gq.substitute(images);
        if (ft.degree_in(0) != pencil.member_degree || gt.degree_in(0) != pencil.member_degree)
            continue;
        MultiPoly member = ft - MultiPoly::variable(2, 1) * gt;
        MultiPoly disc = discriminant_univ(member, 0);
        if (disc.is_zero()) continue;
        disc_gcd = poly_gcd(disc_gcd, disc);
        ++good_lines;
    }

    std::vector<Rat> candidates;
    int distinct_nonzero_roots = 0;
    if (disc_gcd.is_constant()) {
        // no common roots at all
    } else {
        MultiPoly sf = squarefree_part(disc_gcd);
        int deg = sf.degree_in(1);
        bool zero_root = sf.coeff_in(1, 0).is_zero();
        distinct_nonzero_roots = deg - (zero_root ? 1 : 0);
        for (auto& r : rational_roots(sf, 1))
            if (r != 0) candidates.push_back(r);
    }
    out.upper = distinct_nonzero_roots + (f_bad ? 1 : 0) + (g_bad ? 1 : 0);

    for (auto& r : candidates) {
        MultiPoly member = fp - gq.scaled(Scalar(r));
        if (!member.is_zero() && is_non_reduced(member))
            out.witnesses.push_back({Scalar(r), Scalar(1)});
    }
    out.lower = (int)out.witnesses.size();
    return out;
}

// --------------------------------------------------- absolute factor count

namespace {

// kernel dimension of the Gao system for a squarefree bivariate h with
// deg_x = m, deg_y = n
int gao_kernel_dimension(const MultiPoly& h) {
    const int m = h.degree_in(0), n = h.degree_in(1);
    MultiPoly hx = h.derivative(0), hy = h.derivative(1);
    // unknown monomials
    std::vector<Expo> gmono, hmono;
    for (int a = 0; a <= m - 1; ++a)
        for (int b = 0; b <= n; ++b) gmono.push_back({a, b});
    for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= n - 2; ++b) hmono.push_back({a, b});
    // rows indexed by the exponents appearing in the contributions
    std::map<Expo, int> rowidx;
    std::vector<std::vector<std::pair<int, Scalar>>> cols;
    auto add_col = [&](const MultiPoly& contrib) {
        std::vector<std::pair<int, Scalar>> col;
        for (auto& t : contrib.terms()) {
            auto [it, fresh] = rowidx.emplace(t.e, (int)rowidx.size());
            col.push_back({it->second, t.c});
        }
        cols.push_back(std::move(col));
    };
    for (auto& e : gmono) {
        MultiPoly mono = MultiPoly::monomial(2, e, Scalar(1));
        add_col(h * mono.derivative(1) - mono * hy);
    }
    for (auto& e : hmono) {
        MultiPoly mono = MultiPoly::monomial(2, e, Scalar(1));
        add_col(mono * hx - h * mono.derivative(0));
    }
    Matrix sys((int)rowidx.size(), (int)cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (auto& [i, c] : cols[j]) sys.at(i, (int)j) += c;
    return (int)rank_kernel(sys).kernel.size();
}

// restriction of h to a random affine plane, with validity checks;
// returns the squarefree restriction or nothing if degenerate
std::optional<MultiPoly> plane_restriction(const MultiPoly& h, Rng& rng) {
    const int nv = h.nvars();
    std::vector<MultiPoly> images;
    for (int i = 0; i < nv; ++i) {
        MultiPoly im = MultiPoly::variable(2, 0).scaled(Scalar(rng.range(-4, 4))) +
                       MultiPoly::variable(2, 1).scaled(Scalar(rng.range(-4, 4))) +
                       MultiPoly::constant(2, Scalar(rng.range(-4, 4)));
        images.push_back(im);
    }
    MultiPoly ht = h.substitute(images);
    if (ht.is_zero() || ht.total_degree() != h.total_degree()) return std::nullopt;
    ht = squarefree_part(ht);
    const int d = ht.total_degree();
    if (ht.degree_in(0) != d || ht.degree_in(1) != d) return std::nullopt;
    // no repeated or y-free factors may survive
    if (!poly_gcd(ht, ht.derivative(1)).is_constant()) return std::nullopt;
    return ht;
}

} // namespace

int absolute_factor_count(const MultiPoly& h, uint64_t seed) {
    if (h.is_zero()) fail("ZeroPolynomial", "factor count of zero");
    if (h.total_degree() < 1) fail("BadDegree", "factor count of a constant");
    std::vector<int> active;
    for (int i = 0; i < h.nvars(); ++i)
        if (h.uses_var(i)) active.push_back(i);
    if (active.size() == 1) return 1; // c * x^k has the single factor x
    if (active.size() == 2 && h.is_homogeneous(nullptr)) {
        // binary form: distinct linear factors over the closure
        return squarefree_part(h).total_degree();
    }
    Rng rng(seed);
    int first = -1;
    for (int attempt = 0; attempt < 16; ++attempt) {
        auto ht = plane_restriction(h, rng);
        if (!ht) continue;
        int count = 1 + gao_kernel_dimension(*ht);
        if (first < 0) {
            first = count;
            continue;
        }
        if (count == first) return count;
        // one disagreement allowed: replace the reference and continue
        first = count;
    }
    fail("PlaneDisagreement", "independent plane restrictions kept disagreeing");
}

int r_partial(const Pencil& pencil, const std::vector<std::pair<Scalar, Scalar>>& members,
              uint64_t seed) {
    // members must be pairwise distinct as projective points
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            if ((members[i].first * members[j].second - members[j].first * members[i].second)
                    .is_zero())
                fail("BadInput", "repeated pencil members");
    int total = 0;
    Rng rng(seed);
    for (auto& [alpha, beta] : members) {
        MultiPoly member = pencil_member(pencil, alpha, beta);
        if (member.is_zero()) fail("BadInput", "zero pencil member");
        total += absolute_factor_count(squarefree_part(member), rng.next()) - 1;
    }
    return total;
}

// ------------------------------------------------------------------ halphen

bool halphen_admissible(const HalphenTriple& t) {
    if (t.p < 2 || t.q < 2 || t.r < 2) fail("EntryOutOfRange", "multiplicities must be >= 2");
    long p = t.p, q = t.q, r = t.r;
    bool formula = q * r + p * r + p * q > p * q * r;
    // cross-check against the explicit list, up to permutation
    long a[3] = {p, q, r};
    std::sort(a, a + 3);
    bool listed = (a[0] == 2 && a[1] == 2) ||
                  (a[0] == 2 && a[1] == 3 && (a[2] == 3 || a[2] == 4 || a[2] == 5));
    if (formula != listed)
        fail_check("ListMismatch", "harmonicity formula disagrees with the catalog");
    return formula;
}

bool halphen_witness_check(const MultiPoly& f2, const MultiPoly& g2, const MultiPoly& h2,
                           const HalphenTriple& t, int k) {
    const int nv = f2.nvars();
    if (nv != 2) fail("BadInput", "witness polynomials must be binary forms");
    if (k <= 0 || k % t.p || k % t.q || k % t.r)
        fail("BadInput", "k must be divisible by each multiplicity");
    MultiPoly rel = f2.pow((unsigned)t.p) + g2.pow((unsigned)t.q) + h2.pow((unsigned)t.r);
    if (!rel.is_zero()) fail("RelationViolated", "F^p + G^q + H^r != 0");

    auto d_of = [&](const MultiPoly& a) { return ext_d(PolyForm::from_poly(a, nv)); };
    auto w_of = [&](const MultiPoly& a, int pa, const MultiPoly& b, int pb) {
        // (k/pa) a db - (k/pb) b da
        return d_of(b).scaled_poly(a.scaled(Scalar::of_fraction(k, pa))) -
               d_of(a).scaled_poly(b.scaled(Scalar::of_fraction(k, pb)));
    };
    PolyForm wfg = w_of(f2, t.p, g2, t.q);
    PolyForm wgh = w_of(g2, t.q, h2, t.r);
    PolyForm wfh = w_of(f2, t.p, h2, t.r);
    MultiPoly fp1 = f2.pow((unsigned)(t.p - 1)), gq1 = g2.pow((unsigned)(t.q - 1)),
              hr1 = h2.pow((unsigned)(t.r - 1));
    bool id1 = wfg.scaled_poly(fp1.scaled(Scalar(t.p))) == wgh.scaled_poly(hr1.scaled(Scalar(t.r)));
    bool id2 = wfg.scaled_poly(gq1.scaled(Scalar(t.q))) ==
               wfh.scaled_poly(hr1.scaled(Scalar(-t.r)));
    bool id3 = wfh.scaled_poly(fp1.scaled(Scalar(t.p))) ==
               wgh.scaled_poly(gq1.scaled(Scalar(-t.q)));
    return id1 && id2 && id3;
}

} // namespace folforge
