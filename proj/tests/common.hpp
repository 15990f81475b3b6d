#ifndef FOLFORGE_TESTS_COMMON_HPP
#define FOLFORGE_TESTS_COMMON_HPP

#include <bit>

#include "folforge/base.hpp"
#include "folforge/forms.hpp"
#include "folforge/multipoly.hpp"

namespace fft {

using namespace folforge;

inline MultiPoly random_poly(int nvars, int deg, Rng& rng, int coeff_bound = 3) {
    MultiPoly p(nvars);
    for (auto& e : monomials_of_degree(nvars, deg)) {
        long c = rng.range(-coeff_bound, coeff_bound);
        if (c != 0) p.add_term(e, Scalar(c));
    }
    return p;
}

inline MultiPoly random_poly_nonzero(int nvars, int deg, Rng& rng, int coeff_bound = 3) {
    for (int tries = 0; tries < 64; ++tries) {
        MultiPoly p = random_poly(nvars, deg, rng, coeff_bound);
        if (!p.is_zero()) return p;
    }
    fail("RandomDegenerate", "could not sample a nonzero polynomial");
}

// random homogeneous q-form with coefficient degree m
inline PolyForm random_form(int nvars, int q, int m, Rng& rng) {
    PolyForm a(nvars, nvars, q);
    for (uint32_t mask = 0; mask < (1u << nvars); ++mask) {
        if (std::popcount(mask) != q) continue;
        a.add(mask, random_poly(nvars, m, rng, 2));
    }
    return a;
}

// random radially annihilated q-form: i_R of a random (q+1)-form
inline PolyForm random_radial_form(int nvars, int q, int m, Rng& rng) {
    for (int tries = 0; tries < 64; ++tries) {
        PolyForm b = random_form(nvars, q + 1, m - 1, rng);
        PolyForm a = contract_radial(b);
        if (!a.is_zero()) return a;
    }
    fail("RandomDegenerate", "could not sample a nonzero radial form");
}

} // namespace fft

#endif
