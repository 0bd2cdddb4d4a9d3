#include "poly.hpp"
#include <algorithm>
#include <random>

namespace gentle {

Poly Poly::from(std::vector<FVal> v) {
    while (!v.empty() && Field::is_zero(v.back())) v.pop_back();
    return Poly{std::move(v)};
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
    std::vector<FVal> r(std::max(a.c.size(), b.c.size()), F.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = F.add(r[i], b.c[i]);
    return Poly::from(std::move(r));
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
    std::vector<FVal> r(std::max(a.c.size(), b.c.size()), F.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = F.sub(r[i], b.c[i]);
    return Poly::from(std::move(r));
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<FVal> r(a.c.size() + b.c.size() - 1, F.zero());
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
    return Poly::from(std::move(r));
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw domain_error("polynomial division by zero");
    Poly rem = a;
    std::vector<FVal> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, F.zero());
    FVal lead_inv = F.inv(b.c.back());
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        size_t shift = rem.deg() - b.deg();
        FVal f = F.mul(rem.c.back(), lead_inv);
        q[shift] = F.add(q[shift], f);
        for (size_t i = 0; i < b.c.size(); ++i)
            rem.c[shift + i] = F.sub(rem.c[shift + i], F.mul(f, b.c[i]));
        rem = Poly::from(std::move(rem.c));
    }
    return {Poly::from(std::move(q)), rem};
}

Poly poly_monic(const Field& F, const Poly& a) {
    if (a.is_zero()) return a;
    FVal inv = F.inv(a.c.back());
    Poly r = a;
    for (auto& x : r.c) x = F.mul(x, inv);
    return r;
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

void poly_xgcd(const Field& F, const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v) {
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::from({F.one()}), u1{};
    Poly v0{}, v1 = Poly::from({F.one()});
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(F, r0, r1);
        Poly u2 = poly_sub(F, u0, poly_mul(F, q, u1));
        Poly v2 = poly_sub(F, v0, poly_mul(F, q, v1));
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) { g = r0; u = u0; v = v0; return; }
    FVal inv = F.inv(r0.c.back());
    g = poly_monic(F, r0);
    u = u0; for (auto& x : u.c) x = F.mul(x, inv);
    v = v0; for (auto& x : v.c) x = F.mul(x, inv);
}

static FVal poly_eval(const Field& F, const Poly& f, const FVal& x) {
    FVal acc = F.zero();
    for (size_t i = f.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.c[i]);
    return acc;
}

static void divisors_of(const mpz_class& n, std::vector<mpz_class>& out) {
    mpz_class a = abs(n);
    for (mpz_class d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            if (d * d != a) out.push_back(a / d);
        }
    }
}

// Rational roots via the integer content of f (lowest-term candidates p/q
// with p | constant term and q | leading term).
static std::vector<FVal> rational_roots(const Field& F, Poly f) {
    std::vector<FVal> roots;
    // strip T^k factors
    size_t k = 0;
    while (k < f.c.size() && Field::is_zero(f.c[k])) ++k;
    if (k > 0) {
        roots.push_back(F.zero());
        f.c.erase(f.c.begin(), f.c.begin() + k);
    }
    if (f.deg() < 1) return roots;
    // scale to integer coefficients
    mpz_class den_lcm(1);
    for (const auto& c : f.c) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : f.c) ic.push_back(mpz_class(c * den_lcm));
    std::vector<mpz_class> ps, qs;
    divisors_of(ic.front(), ps);
    divisors_of(ic.back(), qs);
    for (const auto& p : ps)
        for (const auto& q : qs)
            for (int s : {1, -1}) {
                FVal cand(p * s, q);
                cand.canonicalize();
                if (Field::is_zero(poly_eval(F, f, cand))) {
                    bool seen = false;
                    for (const auto& r : roots) seen = seen || Field::eq(r, cand);
                    if (!seen) roots.push_back(cand);
                }
            }
    return roots;
}

// x^e mod f over F_p, for the Frobenius-based linear-factor extraction.
static Poly poly_powmod(const Field& F, Poly base, mpz_class e, const Poly& f) {
    Poly r = Poly::from({F.one()});
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = poly_divmod(F, poly_mul(F, r, base), f).second;
        base = poly_divmod(F, poly_mul(F, base, base), f).second;
        e >>= 1;
    }
    return r;
}

static void split_equal_degree_one(const Field& F, const Poly& f, std::vector<FVal>& out,
                                   std::mt19937_64& rng) {
    // f = product of distinct monic linear factors over F_p
    if (f.deg() == 0) return;
    if (f.deg() == 1) {
        out.push_back(F.neg(f.c[0])); // monic T + c0
        return;
    }
    unsigned long p = F.characteristic();
    if (p == 2) { // tiny field: trial the two elements
        for (long t : {0L, 1L})
            if (Field::is_zero(poly_eval(F, f, F.from_long(t)))) out.push_back(F.from_long(t));
        return;
    }
    for (;;) {
        FVal a = F.from_long(static_cast<long>(rng() % p));
        Poly shifted = Poly::from({a, F.one()}); // T + a
        Poly w = poly_powmod(F, shifted, mpz_class((p - 1) / 2), f);
        w = poly_sub(F, w, Poly::from({F.one()}));
        Poly g = poly_gcd(F, w, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            split_equal_degree_one(F, g, out, rng);
            split_equal_degree_one(F, poly_divmod(F, f, g).first, out, rng);
            return;
        }
    }
}

std::vector<FVal> field_roots(const Field& F, const Poly& f, uint64_t seed) {
    if (f.deg() < 1) return {};
    if (F.is_rational()) return rational_roots(F, f);
    // gcd with T^p - T isolates the product of the distinct linear factors
    Poly mono = poly_monic(F, f);
    Poly xp = poly_powmod(F, Poly::from({F.zero(), F.one()}), mpz_class(F.characteristic()), mono);
    Poly lin = poly_gcd(F, poly_sub(F, xp, Poly::from({F.zero(), F.one()})), mono);
    std::vector<FVal> out;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    split_equal_degree_one(F, lin, out, rng);
    return out;
}

} // namespace gentle
