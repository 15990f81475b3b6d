#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "folforge/commands.hpp"
#include "folforge/expression.hpp"

#include "json.hpp"

using namespace folforge;
using json = nlohmann::ordered_json;

namespace {
std::pair<int, json> run(const std::vector<std::string>& args) {
    std::ostringstream out;
    int code = run_command(args, out);
    json j = json::parse(out.str(), nullptr, false);
    return {code, j};
}
} // namespace

TEST_CASE("expression parsing basics") {
    VarTable p3 = ambient_vars("P3");
    GradedValue v = parse_expression("x1*dx0 - x0*dx1", p3);
    int q;
    REQUIRE(v.pure_degree(&q));
    CHECK(q == 1);
    PolyForm w = v.pure(1);
    CHECK(w.coeff(1) == MultiPoly::variable(p3.nvars(), 1));
    CHECK(w.coeff(2) == -MultiPoly::variable(p3.nvars(), 0));

    // the quadric of the torus quotient example
    VarTable q3 = ambient_vars("Q3");
    MultiPoly qq = parse_expression("x0^2+x1*x2+x3*x4", q3).poly();
    CHECK(qq.total_degree() == 2);
    CHECK(qq.terms().size() == 3);

    // rationals and the imaginary unit
    MultiPoly z = parse_expression("1/2*x0 + i*x1", q3).poly();
    CHECK(z.coeff_of(Expo{1, 0, 0, 0, 0, 0}) == Scalar::of_fraction(1, 2));
    CHECK(z.coeff_of(Expo{0, 1, 0, 0, 0, 0}) == Scalar::i());

    // eps is a declared parameter without a differential
    CHECK(!parse_expression("eps*x0*dx1", q3).is_zero());

    // the product-of-lines ambient and the binary-form ambient
    VarTable p1p1 = ambient_vars("P1P1");
    GradedValue alpha = parse_expression("x0*dy1 - y0*dx1", p1p1);
    int qd;
    CHECK(alpha.pure_degree(&qd));
    CHECK(qd == 1);
    VarTable st = ambient_vars("ST");
    CHECK(parse_expression("s^2 - t^2", st).poly().total_degree() == 2);
    CHECK_THROWS_AS(ambient_vars("P9"), error);
    CHECK_THROWS_WITH_AS(parse_expression("deps", q3), doctest::Contains("GradingError"), error);

    CHECK_THROWS_WITH_AS(parse_expression("3*f2*df1", p3), doctest::Contains("UnknownIdentifier"),
                         error);
    CHECK_THROWS_WITH_AS(parse_expression("dx0^2", p3), doctest::Contains("GradingError"), error);
    CHECK_THROWS_WITH_AS(parse_expression("x0 +", p3), doctest::Contains("SyntaxError"), error);
    CHECK_THROWS_WITH_AS(parse_expression("x0 @ x1", p3), doctest::Contains("SyntaxError"), error);
    // errors carry positions
    try {
        parse_expression("x0 +\n  z9", p3);
        CHECK(false);
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("2:3") != std::string::npos);
    }
}

TEST_CASE("print / parse round trip") {
    VarTable p3 = ambient_vars("P3");
    Rng rng(5);
    auto roundtrip = [&](const GradedValue& v) {
        std::string text = print_value(v, p3);
        GradedValue back = parse_expression(text, p3);
        CHECK(back.parts == v.parts);
    };
    for (int it = 0; it < 10; ++it) {
        GradedValue v;
        v.nvars = p3.nvars();
        v.ngeom = p3.ngeom;
        PolyForm w(p3.nvars(), p3.ngeom, 1);
        for (int i = 0; i < p3.ngeom; ++i) w.add(1u << i, fft::random_poly(p3.nvars(), 2, rng));
        if (w.is_zero()) continue;
        v.parts.emplace(1, w);
        roundtrip(v);
    }
    // gaussian coefficients and mixed degrees
    GradedValue v = parse_expression("(1/2+3/4*i)*x0*dx1 + x2 - 5*dx0*dx3", p3);
    roundtrip(v);
    roundtrip(parse_expression("0", p3));
    roundtrip(parse_expression("eps*x0 - 2*eps^2*x1", p3));
}

TEST_CASE("cli determinism: identical invocations are byte-identical") {
    std::vector<std::string> args = {"dim", "--family", "Rat", "--degrees", "1,3",
                                     "--ambient", "P3", "--samples", "2", "--seed", "5"};
    std::ostringstream a, b;
    CHECK(run_command(args, a) == 0);
    CHECK(run_command(args, b) == 0);
    CHECK(a.str() == b.str());

    std::vector<std::string> pen = {"pencil", "--f", "x0*x1", "--g", "x2*x3",
                                    "--p", "1", "--q", "1", "--seed", "9"};
    std::ostringstream c, d;
    CHECK(run_command(pen, c) == 0);
    CHECK(run_command(pen, d) == 0);
    CHECK(c.str() == d.str());
}

TEST_CASE("cli check command") {
    auto [code, j] = run({"check", "--ambient", "P3", "--form", "x1*dx0 - x0*dx1"});
    CHECK(code == 0);
    CHECK(j["integrable"] == true);
    CHECK(j["radial_ok"] == true);
    CHECK(j["degree"] == 0);
    CHECK(j["singular_divisorial_part"] == "1");

    // a non-integrable form reports cleanly
    auto [code2, j2] =
        run({"check", "--ambient", "P3", "--form", "x1*x2*dx0 - x0*x0*dx1 + x0*x1*dx3"});
    CHECK(code2 == 0);
    CHECK(j2["radial_ok"] == false);

    auto [code3, j3] = run({"check", "--ambient", "P3", "--form", "x9*dx0"});
    CHECK(code3 == 3);
    CHECK(j3["error"] == "UnknownIdentifier");
}

TEST_CASE("cli dim and orbit commands") {
    auto [code, j] = run({"dim", "--family", "Rat", "--degrees", "1,3", "--ambient", "P3"});
    CHECK(code == 0);
    CHECK(j["lower"] == 21);
    CHECK(j["certified"] == true);
    CHECK(j["table_value"] == 21);
    CHECK(j["discrepancy_flag"] == false);

    auto [code2, j2] = run({"dim", "--family", "Log", "--degrees", "1,1,2", "--ambient", "P3"});
    CHECK(code2 == 0);
    CHECK(j2["lower"] == 16);
    CHECK(j2["certified"] == true);
    CHECK(j2["table_value"] == 17);
    CHECK(j2["discrepancy_flag"] == true);

    auto [code3, j3] = run({"orbit", "--id", "P3/Aff"});
    CHECK(code3 == 0);
    CHECK(j3["orbit_dimension"] == 13);
}

TEST_CASE("cli pencil command") {
    auto [code, j] = run({"pencil", "--f", "x0", "--g", "x1", "--p", "1", "--q", "1"});
    CHECK(code == 0);
    CHECK(j["multiple_lower"] == 0);
    CHECK(j["multiple_upper"] == 0);
    CHECK(j["r_partial"] == 0);

    auto [code2, j2] = run({"pencil", "--f", "x0*x1", "--g", "x2*x3", "--p", "1", "--q", "1",
                            "--members", "1:0,0:1"});
    CHECK(code2 == 0);
    CHECK(j2["r_partial"] == 2);

    auto [code3, j3] = run({"pencil", "--f", "x0", "--g", "x0", "--p", "1", "--q", "1"});
    CHECK(code3 == 3);
    CHECK(j3["error"] == "InvariantViolation");
}

TEST_CASE("cli classify and example commands") {
    auto [code, j] = run({"classify", "--form", "x1*dx0 - x0*dx1", "--codim", "1"});
    CHECK(code == 0);
    CHECK(j["linear_projection"] == true);
    CHECK(j["projection_forms"].size() == 2);

    auto [code2, j2] = run({"example", "--id", "QCplus-3"});
    CHECK(code2 == 0);
    CHECK(j2["pass"] == true);

    auto [code3, j3] = run({"example", "--id", "bogus"});
    CHECK(code3 == 3);
    CHECK(j3["error"] == "UnknownExample");
}

TEST_CASE("cli catalog command") {
    auto [code, j] = run({"catalog", "--seed", "3"});
    CHECK(code == 0);
    REQUIRE(j["rows"].is_array());
    CHECK(j["rows"].size() == 16);
    int certified = 0, flagged = 0, formula = 0, skipped = 0;
    for (auto& r : j["rows"]) {
        if (r["status"] == "certified") ++certified;
        if (r["status"] == "formula") ++formula;
        if (r["status"] == "not-buildable") ++skipped;
        if (r["discrepancy_flag"] == true) ++flagged;
        if (r["invariants_ok"].is_boolean()) CHECK(r["invariants_ok"] == true);
    }
    CHECK(certified == 7);
    CHECK(formula == 5);
    CHECK(skipped == 2);
    CHECK(flagged == 3);
}

TEST_CASE("scenario replay") {
    const char* path = "scenario_test_tmp.json";
    {
        std::ofstream f(path);
        f << R"({"argv": ["pencil", "--f", "x0", "--g", "x1", "--p", "1", "--q", "1"],
                 "expect": {"multiple_lower": 0, "multiple_upper": 0, "r_partial": 0}})";
    }
    std::ostringstream out;
    CHECK(run_command({"--scenario", path}, out) == 0);

    {
        std::ofstream f(path);
        f << R"({"argv": ["pencil", "--f", "x0", "--g", "x1", "--p", "1", "--q", "1"],
                 "expect": {"multiple_lower": 7}})";
    }
    std::ostringstream out2;
    CHECK(run_command({"--scenario", path}, out2) == 2);
    std::remove(path);
}
