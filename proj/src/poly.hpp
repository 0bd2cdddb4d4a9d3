#pragma once

#include "field.hpp"
#include <vector>

namespace gentle {

// Polynomials over the working field, coefficient vector with c[i] the
// coefficient of T^i.  Always normalized: no trailing zeros.
struct Poly {
    std::vector<FVal> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    static Poly from(std::vector<FVal> v);
};

Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
// Quotient and remainder of a by b (b nonzero).
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b);
Poly poly_monic(const Field& F, const Poly& a);
Poly poly_gcd(const Field& F, Poly a, Poly b);
// g = gcd(a,b) monic together with u,v such that u*a + v*b = g.
void poly_xgcd(const Field& F, const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v);

// All roots of f in the field, with multiplicity stripped (each root once).
// Over Q this enumerates rational candidates from the integer content; over
// F_p it extracts the linear factors by distinct-degree/equal-degree splitting.
std::vector<FVal> field_roots(const Field& F, const Poly& f, uint64_t seed = 1);

} // namespace gentle
