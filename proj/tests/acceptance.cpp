// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run with no arguments for the full battery or with a criterion number.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "folforge/expression.hpp"
#include "folforge/moduli.hpp"
#include "folforge/pencil.hpp"

using namespace folforge;

namespace {

struct Criterion {
    int number;
    std::string description;
    std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool expect(bool ok, const std::string& what, std::string& log) {
    if (!ok) log += (log.empty() ? "" : "; ") + what;
    return ok;
}

// ------------------------------------------------------------ criterion 1

bool criterion_component_dimensions(std::string& log) {
    struct Row {
        ComponentFamily family;
        int expected;
        const char* name;
    };
    Ambient p3 = Ambient::projective(3);
    std::vector<Row> rows = {
        {ComponentFamily::rational(p3, 1, 3), 21, "Rat(1,3)"},
        {ComponentFamily::rational(p3, 2, 2), 16, "Rat(2,2)"},
        {ComponentFamily::logarithmic(p3, {1, 1, 1, 1}), 14, "Log(1,1,1,1)"},
        {ComponentFamily::linear_pullback(p3, 2), 17, "PBL(2)"},
    };
    bool ok = true;
    for (auto& row : rows) {
        auto t0 = std::chrono::steady_clock::now();
        DimensionReport rep = certified_dimension(row.family, 2, 1);
        double dt = seconds_since(t0);
        ok &= expect(rep.certified && rep.lower == row.expected && rep.upper == row.expected,
                     std::string(row.name) + " != " + std::to_string(row.expected), log);
        ok &= expect(dt < 60.0, std::string(row.name) + " exceeded 60 s", log);
    }
    return ok;
}

// ------------------------------------------------------------ criterion 2

bool criterion_flagged_rows(std::string& log) {
    bool ok = true;
    auto check = [&](ComponentFamily fam, const char* name) {
        DimensionReport rep = certified_dimension(fam, 2, 1);
        ok &= expect(rep.certified, std::string(name) + " not certified", log);
        ok &= expect(rep.fiber_verified, std::string(name) + " fiber not verified", log);
        ok &= expect(rep.lower == rep.upper, std::string(name) + " lower != upper", log);
        ok &= expect(rep.table_value.has_value(), std::string(name) + " missing table value", log);
        ok &= expect(rep.discrepancy_flag, std::string(name) + " discrepancy flag not raised", log);
    };
    check(ComponentFamily::logarithmic(Ambient::projective(3), {1, 1, 2}), "P3/Log(1,1,2)");
    check(ComponentFamily::rational(Ambient::quadric3(), 1, 2), "Q3/Rat(1,2)");
    check(ComponentFamily::logarithmic(Ambient::quadric3(), {1, 1, 1}), "Q3/Log(1,1,1)");
    return ok;
}

// ------------------------------------------------------------ criterion 3

bool criterion_orbit_dimensions(std::string& log) {
    bool ok = true;
    auto t0 = std::chrono::steady_clock::now();
    int exc = orbit_dimension(exc2_action_form(), sl_algebra_fields(4), nullptr);
    ok &= expect(exc == 13, "P3 action orbit != 13 (got " + std::to_string(exc) + ")", log);
    ok &= expect(seconds_since(t0) < 60.0, "P3 orbit exceeded 60 s", log);
    t0 = std::chrono::steady_clock::now();
    AffQBundle b = affq_build();
    ok &= expect(b.orbit_dim == 8, "Q3 action orbit != 8 (got " + std::to_string(b.orbit_dim) + ")",
                 log);
    ok &= expect(seconds_since(t0) < 60.0, "Q3 orbit exceeded 60 s", log);
    return ok;
}

// ------------------------------------------------------------ criterion 4

bool criterion_rat11(std::string& log) {
    bool ok = true;
    int expected[] = {2, 4, 6, 8, 10};
    for (int h0 = 3; h0 <= 7; ++h0)
        ok &= expect(rat11_dimension(h0) == expected[h0 - 3],
                     "rat11(" + std::to_string(h0) + ")", log);
    return ok;
}

// ------------------------------------------------------------ criterion 5

bool criterion_integrability_suite(std::string& log) {
    bool ok = true;
    // every buildable catalog construction satisfies the foliation
    // invariants
    for (auto& e : table1_catalog()) {
        if (!e.buildable || e.plan == "h0-formula") continue;
        CatalogResult res = run_catalog_row(e, 7);
        ok &= expect(res.invariants_ok, e.id + " invariants", log);
    }
    // 100 random radially annihilated degree-2-coefficient forms on P^3
    // fail integrability.  The integrable locus is a proper closed
    // subvariety of the 45-dimensional form space, so a random integer
    // point of a fixed box lies on it with probability roughly the
    // box-size reciprocal; at this seed none do.
    Rng rng(20260808);
    int failures = 0;
    for (int it = 0; it < 100; ++it) {
        PolyForm two(4, 4, 2);
        for (uint32_t mask : masks_of_degree(4, 2)) {
            MultiPoly c(4);
            for (auto& e : monomials_of_degree(4, 1)) {
                long v = rng.range(-3, 3);
                if (v) c.add_term(e, Scalar(v));
            }
            two.add(mask, c);
        }
        PolyForm w = contract_radial(two);
        if (w.is_zero()) {
            ++failures;
            continue;
        }
        if (!check_integrable(w).integrable) ++failures;
    }
    ok &= expect(failures == 100, "only " + std::to_string(failures) + "/100 random forms failed",
                 log);
    return ok;
}

// ------------------------------------------------------------ criterion 6

bool criterion_euler_identity(std::string& log) {
    bool ok = true;
    Rng rng(606);
    for (int q = 1; q <= 2; ++q)
        for (int m = 1; m <= 3; ++m)
            for (int it = 0; it < 50; ++it) {
                PolyForm up(4, 4, q + 1);
                for (uint32_t mask : masks_of_degree(4, q + 1)) {
                    MultiPoly c(4);
                    for (auto& e : monomials_of_degree(4, m - 1)) {
                        long v = rng.range(-3, 3);
                        if (v) c.add_term(e, Scalar(v));
                    }
                    up.add(mask, c);
                }
                PolyForm a = contract_radial(up);
                if (a.is_zero()) continue;
                ok &= expect(check_euler(a, m),
                             "euler failed at q=" + std::to_string(q) + " m=" + std::to_string(m),
                             log);
            }
    return ok;
}

// ------------------------------------------------------------ criterion 7

bool criterion_affq(std::string& log) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    AffQBundle b = affq_build();
    ok &= expect(b.solver_dimension == 1, "solver dimension", log);
    ok &= expect(rank_of(b.ctx.sym_matrix()) == 5, "quadric rank", log);
    // the sampling solver finds the quadric uniquely at degree 2
    {
        auto s4 = sym_power_fields(4);
        Rng rng(777);
        auto inv = invariant_hypersurface({Scalar(0), Scalar(1), Scalar(0), Scalar(0), Scalar(-1)},
                                          {s4.e, s4.f, s4.h}, 2, rng);
        ok &= expect(inv.equation.has_value() && inv.kernel_dimension == 1,
                     "invariant hypersurface kernel", log);
        ok &= expect(inv.equation && *inv.equation == b.ctx.q(), "quadric mismatch", log);
    }
    ok &= expect(curve_in_singular_scheme(b.omega, affq_curve_gamma4(), b.ctx), "gamma4", log);
    ok &= expect(curve_in_singular_scheme(b.omega, affq_curve_gamma3(), b.ctx), "gamma3", log);
    ok &= expect(curve_in_singular_scheme(b.omega, affq_curve_line(), b.ctx), "line", log);
    ok &= expect(b.invariant_hyperplane_count == 1, "invariant hyperplane count", log);
    ok &= expect(seconds_since(t0) < 120.0, "exceeded 120 s", log);
    return ok;
}

// ------------------------------------------------------------ criterion 8

bool criterion_named_examples(std::string& log) {
    bool ok = true;
    for (std::string id : {"QCstar-01", "QCstar-11", "QCplus-2", "QCplus-3"}) {
        auto rep = verify_named_example(id);
        for (auto& c : rep.checks)
            ok &= expect(c.ok, id + ":" + c.name, log);
        ok &= expect(rep.pass, id, log);
    }
    return ok;
}

// ------------------------------------------------------------ criterion 9

bool criterion_jordan_centralizer(std::string& log) {
    bool ok = true;
    auto s4 = sym_power_fields(4);
    ok &= expect(jordan_partition(s4.e) == std::vector<int>{5}, "[5]", log);
    Matrix n2(5, 5), n3(5, 5);
    n2.at(0, 1) = Scalar(1);
    n2.at(1, 2) = Scalar(1);
    n3.at(0, 1) = Scalar(1);
    n3.at(2, 3) = Scalar(1);
    ok &= expect(jordan_partition(n2) == std::vector<int>{3, 1, 1}, "[3,1,1]", log);
    ok &= expect(jordan_partition(n3) == std::vector<int>{2, 2, 1}, "[2,2,1]", log);

    Matrix qhat(5, 5);
    qhat.at(2, 2) = Scalar(1);
    qhat.at(1, 3) = Scalar(-1);
    qhat.at(3, 1) = Scalar(-1);
    qhat.at(0, 4) = Scalar(1);
    qhat.at(4, 0) = Scalar(1);
    Matrix j(5, 5);
    for (int i = 0; i < 4; ++i) j.at(i, i + 1) = Scalar(1);
    auto cent = centralizer_basis(j, AlgebraConstraint::orthogonal, &qhat);
    ok &= expect(cent.size() == 2, "centralizer dimension", log);
    auto sol = bracket_eq_solutions(j, qhat);
    ok &= expect(sol.particular.has_value(), "bracket equation particular", log);
    ok &= expect(sol.kernel.size() == 2, "bracket equation kernel", log);
    if (sol.particular) {
        ok &= expect(lie_bracket(*sol.particular, j) == j, "bracket identity", log);
        Matrix d(5, 5);
        for (int i = 0; i < 5; ++i) d.at(i, i) = Scalar(2 - i);
        ok &= expect(lie_bracket(d, j) == j && is_in_orthogonal(d, qhat),
                     "diagonal display solves the equation", log);
    }
    return ok;
}

// ----------------------------------------------------------- criterion 10

bool criterion_pencils(std::string& log) {
    bool ok = true;
    const int NV = 4;
    auto X = [&](int i) { return MultiPoly::variable(NV, i); };
    // fixed generic cubic/quadric pair
    Rng fg(99);
    MultiPoly f(NV), g(NV);
    for (auto& e : monomials_of_degree(NV, 3)) {
        long c = fg.range(-2, 2);
        if (c) f.add_term(e, Scalar(c));
    }
    for (auto& e : monomials_of_degree(NV, 2)) {
        long c = fg.range(-2, 2);
        if (c) g.add_term(e, Scalar(c));
    }
    auto p23 = make_pencil(f, g, 2, 3);
    auto fb = multiple_fiber_bounds(p23, 2, 7);
    ok &= expect(fb.lower == 2 && fb.upper == 2, "(2,3) pencil bounds", log);

    auto pxy = make_pencil(X(0) * X(1), X(2) * X(3), 1, 1);
    ok &= expect(r_partial(pxy, {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}, 5) == 2,
                 "r_partial", log);

    // additivity of the absolute factor count on 50 coprime squarefree
    // products
    Rng rng(1010);
    int done = 0;
    while (done < 50) {
        MultiPoly h1(NV), h2(NV);
        for (auto& e : monomials_of_degree(NV, 1)) {
            long c = rng.range(-2, 2);
            if (c) h1.add_term(e, Scalar(c));
        }
        MultiPoly h1b(NV);
        for (auto& e : monomials_of_degree(NV, 1)) {
            long c = rng.range(-2, 2);
            if (c) h1b.add_term(e, Scalar(c));
        }
        h1 = h1 * h1b;
        for (auto& e : monomials_of_degree(NV, 2)) {
            long c = rng.range(-2, 2);
            if (c) h2.add_term(e, Scalar(c));
        }
        if (h1.is_zero() || h2.is_zero()) continue;
        if (squarefree_part(h1) != h1.monic() || squarefree_part(h2) != h2.monic()) continue;
        if (!poly_gcd(h1, h2).is_constant()) continue;
        uint64_t seed = rng.next();
        int lhs = absolute_factor_count(h1 * h2, seed);
        int rhs = absolute_factor_count(h1, seed) + absolute_factor_count(h2, seed);
        if (lhs != rhs) {
            ok = expect(false, "additivity failed at iteration " + std::to_string(done), log);
            break;
        }
        ++done;
    }

    // admissibility agrees with the explicit catalog for entries <= 12
    for (int p = 2; p <= 12 && ok; ++p)
        for (int q = 2; q <= 12; ++q)
            for (int r = 2; r <= 12; ++r) {
                int a[3] = {p, q, r};
                std::sort(a, a + 3);
                bool listed = (a[0] == 2 && a[1] == 2) ||
                              (a[0] == 2 && a[1] == 3 && a[2] >= 3 && a[2] <= 5);
                if (halphen_admissible({p, q, r}) != listed) {
                    ok = expect(false, "triple mismatch", log);
                    break;
                }
            }
    return ok;
}

// ----------------------------------------------------------- criterion 11

bool criterion_halphen_witness(std::string& log) {
    MultiPoly s = MultiPoly::variable(2, 0), t = MultiPoly::variable(2, 1);
    MultiPoly f = s * s - t * t;
    MultiPoly g = (s * t).scaled(Scalar(2));
    MultiPoly h = (s * s + t * t).scaled(Scalar::i());
    return expect(halphen_witness_check(f, g, h, {2, 2, 2}, 4), "pythagorean witness", log);
}

// ----------------------------------------------------------- criterion 12

bool criterion_poisson_deformation(std::string& log) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    Rng rng(1212);
    int done = 0;
    while (done < 10) {
        MultiPoly q(4), h1(4), h2(4);
        for (auto& e : monomials_of_degree(4, 2)) {
            long c = rng.range(-3, 3);
            if (c) q.add_term(e, Scalar(c));
        }
        for (auto& e : monomials_of_degree(4, 1)) {
            long c = rng.range(-3, 3);
            if (c) h1.add_term(e, Scalar(c));
        }
        for (auto& e : monomials_of_degree(4, 1)) {
            long c = rng.range(-3, 3);
            if (c) h2.add_term(e, Scalar(c));
        }
        if (q.is_zero() || h1.is_zero() || h2.is_zero()) continue;
        ok &= expect(deformation_limit_check(q, h1, h2),
                     "deformation triple " + std::to_string(done), log);
        ++done;
    }
    ok &= expect(seconds_since(t0) < 30.0, "exceeded 30 s", log);
    return ok;
}

// ----------------------------------------------------------- criterion 13

bool criterion_classification(std::string& log) {
    bool ok = true;
    Rng rng(1313);
    auto random_linear = [&](int nv) {
        MultiPoly p(nv);
        for (auto& e : monomials_of_degree(nv, 1)) {
            long c = rng.range(-2, 2);
            if (c) p.add_term(e, Scalar(c));
        }
        return p;
    };
    auto random_quadric = [&](int nv) {
        MultiPoly p(nv);
        for (auto& e : monomials_of_degree(nv, 2)) {
            long c = rng.range(-2, 2);
            if (c) p.add_term(e, Scalar(c));
        }
        return p;
    };
    for (int n : {3, 4})
        for (int q : {1, 2}) {
            const int nv = n + 1;
            for (int it = 0; it < 20; ++it) {
                // degree 0: pullback of the coordinate projection
                PolyForm model(nv, nv, 0);
                model.add(0, MultiPoly::constant(nv, Scalar(1)));
                for (int j = 0; j <= q; ++j)
                    model = wedge(model, ext_d(PolyForm::from_poly(random_linear(nv), nv)));
                PolyForm w0 = contract_radial(model);
                if (w0.is_zero() || essential_variables(w0) != q + 1) {
                    --it;
                    continue;
                }
                auto c0 = classify_low_degree(w0);
                ok &= expect(c0.linear_projection && (int)c0.projection_forms.size() == q + 1,
                             "degree-0 case n=" + std::to_string(n) + " q=" + std::to_string(q),
                             log);
                if (!ok) return ok;
            }
            for (int it = 0; it < 20; ++it) {
                // degree 1, fibration case
                PolyForm model(nv, nv, 0);
                model.add(0, MultiPoly::constant(nv, Scalar(1)));
                for (int j = 1; j <= q; ++j)
                    model = wedge(model, ext_d(PolyForm::from_poly(random_linear(nv), nv)));
                model = wedge(model, ext_d(PolyForm::from_poly(random_quadric(nv), nv)));
                PolyForm w1 = contract_radial(model);
                if (w1.is_zero()) {
                    --it;
                    continue;
                }
                Classification c1;
                try {
                    c1 = classify_low_degree(w1);
                } catch (const error&) {
                    --it;
                    continue; // degenerate sample
                }
                ok &= expect(c1.fibration_case,
                             "fibration case n=" + std::to_string(n) + " q=" + std::to_string(q),
                             log);
                if (!ok) return ok;
            }
            for (int it = 0; it < 20; ++it) {
                // degree 1, vector-field case: pull i_R i_X vol back from
                // a (q+2)-variable subspace
                const int wdim = q + 2;
                Matrix x(wdim, wdim);
                for (int i = 0; i < wdim; ++i)
                    for (int j = 0; j < wdim; ++j) x.at(i, j) = Scalar(rng.range(-2, 2));
                PolyForm vol(wdim, wdim, wdim);
                vol.add((1u << wdim) - 1, MultiPoly::constant(wdim, Scalar(1)));
                PolyForm small = contract_radial(contract(linear_field(x, wdim), vol));
                if (small.is_zero()) {
                    --it;
                    continue;
                }
                Matrix proj(wdim, nv);
                for (int i = 0; i < wdim; ++i)
                    for (int j = 0; j < nv; ++j) proj.at(i, j) = Scalar(rng.range(-2, 2));
                if (rank_of(proj) != wdim) {
                    --it;
                    continue;
                }
                PolyForm w2 = make_linear_pullback(proj, small);
                if (w2.is_zero()) {
                    --it;
                    continue;
                }
                Classification c2;
                try {
                    c2 = classify_low_degree(w2);
                } catch (const error&) {
                    --it;
                    continue;
                }
                ok &= expect(c2.vector_field_case,
                             "vector-field case n=" + std::to_string(n) + " q=" + std::to_string(q),
                             log);
                if (!ok) return ok;
            }
        }
    return ok;
}

std::vector<Criterion> criteria() {
    return {
        {1, "component dimensions on P3 certified (21, 16, 14, 17)", criterion_component_dimensions},
        {2, "flagged rows certified at the fiber-verified bound with discrepancy flags",
         criterion_flagged_rows},
        {3, "orbit dimensions 13 (P3) and 8 (Q3)", criterion_orbit_dimensions},
        {4, "hyperplane-pencil dimensions 2,4,6,8,10 for h0 = 3..7", criterion_rat11},
        {5, "catalog constructions integrable with trivial gcd; random forms fail",
         criterion_integrability_suite},
        {6, "euler identity on 50 random radial forms per (q, m)", criterion_euler_identity},
        {7, "quadric action bundle: unique rank-5 quadric, singular curves, one hyperplane",
         criterion_affq},
        {8, "named quadric quotient examples pass", criterion_named_examples},
        {9, "jordan partitions and centralizer families", criterion_jordan_centralizer},
        {10, "pencil suite: bounds, base number, additivity, admissible triples",
         criterion_pencils},
        {11, "pythagorean witness over Q(i)", criterion_halphen_witness},
        {12, "deformation-limit identity on 10 random triples", criterion_poisson_deformation},
        {13, "degree <= 1 classification on P3 and P4, codimension 1 and 2",
         criterion_classification},
    };
}

} // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (auto& c : criteria()) {
        if (only && c.number != only) continue;
        std::string log;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.run(log);
        } catch (const std::exception& e) {
            log += std::string("exception: ") + e.what();
        }
        std::ostringstream line;
        line << "criterion " << c.number << (ok ? " PASS" : " FAIL") << " [" << std::fixed;
        line.precision(1);
        line << seconds_since(t0) << "s] " << c.description;
        if (!ok) line << " -- " << log;
        std::cout << line.str() << std::endl;
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
