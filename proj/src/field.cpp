#include "field.hpp"

namespace gentle {

bool is_prime_u32(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field::Field(unsigned long p) : p_(p) {
    if (p == 0) return;
    if (p >= (1ul << 31)) throw domain_error("field characteristic must be < 2^31");
    if (!is_prime_u32(p)) throw domain_error("field characteristic " + std::to_string(p) + " is not prime");
}

Field Field::parse(const std::string& spec) {
    if (spec == "Q" || spec == "q") return Field();
    if (spec.rfind("Fp:", 0) == 0) {
        unsigned long p = 0;
        try {
            p = std::stoul(spec.substr(3));
        } catch (...) {
            throw domain_error("bad field spec '" + spec + "'");
        }
        return Field(p);
    }
    throw domain_error("bad field spec '" + spec + "' (expected Q or Fp:<p>)");
}

std::string Field::spec() const {
    return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_);
}

FVal Field::reduce(const FVal& x) const {
    if (p_ == 0) return x;
    // x.den is invertible mod p by construction; fold into the numerator.
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class p(static_cast<unsigned long>(p_));
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        throw domain_error("division by zero residue in F_" + std::to_string(p_));
    mpz_class r = (num % p) * dinv % p;
    if (r < 0) r += p;
    return FVal(r);
}

FVal Field::from_long(long n) const { return reduce(FVal(n)); }

FVal Field::from_mpq(const mpq_class& q) const {
    mpq_class c(q);
    c.canonicalize();
    return reduce(c);
}

FVal Field::parse_value(const std::string& s) const {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw domain_error("bad scalar '" + s + "'");
    q.canonicalize();
    if (p_ != 0 && mpz_divisible_ui_p(q.get_den().get_mpz_t(), p_))
        throw domain_error("scalar '" + s + "' has no meaning in F_" + std::to_string(p_));
    return reduce(q);
}

FVal Field::inv(const FVal& a) const {
    if (is_zero(a)) throw domain_error("division by zero");
    return reduce(FVal(1) / a);
}

std::string Field::to_string(const FVal& a) { return a.get_str(); }

} // namespace gentle
