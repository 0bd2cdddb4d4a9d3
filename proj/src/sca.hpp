#pragma once

#include "qmatrix.hpp"
#include "poly.hpp"
#include <map>
#include <optional>
#include <vector>

namespace gentle {

// Finite-dimensional unital associative algebra given by an indexed basis
// and a sparse multiplication table.  Associativity and the unit law are
// checked on construction.
class StructureConstantAlgebra {
public:
    using Elem = std::vector<FVal>; // dense coefficient vector, length dim()

    StructureConstantAlgebra(const Field& F, size_t dim,
                             std::map<std::pair<size_t, size_t>, Elem> table,
                             Elem unit, bool check = true);

    const Field& field() const { return F_; }
    size_t dim() const { return n_; }
    const Elem& unit() const { return unit_; }

    Elem zero_elem() const { return Elem(n_, F_.zero()); }
    Elem basis_elem(size_t i) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem scale(const FVal& c, const Elem& a) const;
    bool is_zero(const Elem& a) const;
    bool eq(const Elem& a, const Elem& b) const;

    QMatrix left_mult_matrix(const Elem& a) const; // column j = a * e_j
    Poly min_poly(const Elem& a) const;

private:
    void check_structure() const;
    Field F_;
    size_t n_;
    std::map<std::pair<size_t, size_t>, Elem> table_;
    Elem unit_;
};

using SCA = StructureConstantAlgebra;

// Basis of the Jacobson radical via the trace bilinear form of the regular
// representation (valid over Q, and over F_p once p exceeds the dimension).
std::vector<SCA::Elem> radical_basis(const SCA& E);

struct IdempotentResult {
    enum Kind { Found, Local, SplitFailure } kind;
    SCA::Elem idempotent; // valid when kind == Found; e*e = e, e not in {0, 1}
    std::string note;     // diagnostic for SplitFailure
};

// Searches for a nontrivial idempotent: computes E/rad(E), splits the
// semisimple quotient through minimal polynomials of central (then general)
// elements, and lifts back along the radical with the cubic Newton step
// e <- 3e^2 - 2e^3.  Returns Local iff E has no nontrivial idempotent that
// the split search can certify; SplitFailure reports a quotient that did not
// split over the prime field.
IdempotentResult find_nontrivial_idempotent(const SCA& E, uint64_t seed = 1);

// Quotient by a subspace spanned by `radical` (must be an ideal); returns the
// quotient algebra plus the projection matrix (dim(E) -> dim(E/I)) and a
// section matrix (dim(E/I) -> dim(E)).
struct QuotientData {
    SCA quotient;
    QMatrix projection;
    QMatrix section;
};
QuotientData quotient_by_ideal(const SCA& E, const std::vector<SCA::Elem>& ideal_basis);

} // namespace gentle
