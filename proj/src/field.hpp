#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gentle {

// Thrown for all recoverable domain errors (bad input, unsupported field, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact scalar: a rational for Q, a reduced residue (stored in the numerator)
// for F_p.  Values are always canonical: lowest terms, positive denominator,
// residues in [0, p).
using FVal = mpq_class;

// Ground field, Q (p = 0) or F_p with p an odd-sized prime < 2^31.
class Field {
public:
    Field() : p_(0) {}
    explicit Field(unsigned long p);

    static Field parse(const std::string& spec); // "Q" or "Fp:<p>"

    bool is_rational() const { return p_ == 0; }
    unsigned long characteristic() const { return p_; }
    std::string spec() const;

    FVal zero() const { return FVal(0); }
    FVal one() const { return FVal(1); }
    FVal from_long(long n) const;
    FVal from_mpq(const mpq_class& q) const; // reduces mod p when needed
    FVal parse_value(const std::string& s) const;

    FVal add(const FVal& a, const FVal& b) const { return reduce(a + b); }
    FVal sub(const FVal& a, const FVal& b) const { return reduce(a - b); }
    FVal mul(const FVal& a, const FVal& b) const { return reduce(a * b); }
    FVal neg(const FVal& a) const { return reduce(-a); }
    FVal inv(const FVal& a) const;
    FVal div(const FVal& a, const FVal& b) const { return mul(a, inv(b)); }

    static bool is_zero(const FVal& a) { return sgn(a) == 0; }
    static bool eq(const FVal& a, const FVal& b) { return cmp(a, b) == 0; }
    static std::string to_string(const FVal& a);

private:
    FVal reduce(const FVal& x) const;
    unsigned long p_;
};

bool is_prime_u32(unsigned long n);

} // namespace gentle
