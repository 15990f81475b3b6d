#ifndef FOLFORGE_EXPRESSION_HPP
#define FOLFORGE_EXPRESSION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folforge/forms.hpp"

namespace folforge {

// declared variables of a CLI ambient: geometric variables first, then
// the deformation parameter eps
struct VarTable {
    std::string ambient;
    std::vector<std::string> names; // size nvars = ngeom + 1 (eps)
    int ngeom = 0;

    int nvars() const { return (int)names.size(); }
    std::optional<int> index_of(const std::string& name) const;
};

// P2, P3, P4, Q3 (five cone variables), P1P1 (x0, x1, y0, y1), ST (s, t)
VarTable ambient_vars(const std::string& ambient);

// inhomogeneous-in-form-degree value of an expression
struct GradedValue {
    int nvars = 0, ngeom = 0;
    std::map<int, PolyForm> parts; // form degree -> form

    bool is_zero() const;
    bool pure_degree(int* q) const; // single nonzero stratum
    PolyForm pure(int expect_degree) const;
    MultiPoly poly() const; // 0-form part, fails if higher strata present
};

// grammar:  expr   := ['+'|'-'] term (('+'|'-') term)*
//           term   := factor ('*' factor)*
//           factor := primary ('^' nat)*
//           primary:= scalar | var | 'd' var | '(' expr ')'
//           scalar := int ('/' nat)? | 'i'
// '*' is the wedge product with automatic grading; errors carry
// line/column and one of SyntaxError, UnknownIdentifier, GradingError
GradedValue parse_expression(const std::string& text, const VarTable& vars);

std::string print_value(const GradedValue& v, const VarTable& vars);

} // namespace folforge

#endif
