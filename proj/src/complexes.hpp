#pragma once

#include "based_algebra.hpp"
#include "sca.hpp"
#include <optional>

namespace gentle {

// Bounded complex of projectives over a based algebra.  comps[k] lists the
// vertex of each projective summand in degree lo + k; diffs[k] maps degree
// lo + k to lo + k + 1 and acts by right multiplication.
struct ProjComplex {
    const BasedAlgebra* alg = nullptr;
    int lo = 0;
    std::vector<std::vector<int>> comps;
    std::vector<AMat> diffs;

    bool empty() const { return comps.empty(); }
    int hi() const { return lo + static_cast<int>(comps.size()) - 1; }
    std::vector<int> comps_at(int deg) const;
    const AMat* diff_at(int deg) const; // map from degree deg to deg+1
};

ProjComplex make_complex(const BasedAlgebra& A, int lo,
                         std::vector<std::vector<int>> comps, std::vector<AMat> diffs);
ProjComplex zero_complex(const BasedAlgebra& A);
// stalk P_v placed in degree deg
ProjComplex stalk_complex(const BasedAlgebra& A, int vertex, int deg);

struct ComplexCheck {
    bool is_complex = false;
    bool is_minimal = false;
    std::string issue;
};
ComplexCheck verify_complex(const ProjComplex& X);

// drops empty boundary degrees
ProjComplex normalized(ProjComplex X);

// (X[n])^r = X^{r+n}, differentials scaled by (-1)^n
ProjComplex shift_complex(const ProjComplex& X, int n);
ProjComplex direct_sum(const ProjComplex& X, const ProjComplex& Y);
bool equal_complexes(const ProjComplex& X, const ProjComplex& Y);

// per degree, the vector (dim e_v H^r(X))_v over the vertices of the algebra
struct CohomologyDims {
    int lo = 0;
    std::vector<std::vector<size_t>> dims; // [degree - lo][vertex]
    std::vector<size_t> totals() const;
};
CohomologyDims cohomology_dims(const ProjComplex& X);

// homotopy-equivalent minimal complex (Gaussian contraction of every
// differential entry that is invertible in the algebra)
ProjComplex minimize(const ProjComplex& X);

// A chain map X -> Y on the union window; f[k] maps degree (lo + k) of X.
struct ChainMap {
    int lo = 0;
    std::vector<AMat> f;
    const AMat* at(int deg) const;
};

std::vector<ChainMap> chain_map_basis(const ProjComplex& X, const ProjComplex& Y);
ChainMap compose_chain_maps(const ProjComplex& X, const ChainMap& g, const ChainMap& f);
ChainMap identity_chain_map(const ProjComplex& X);

struct HomHomotopy {
    size_t dimension = 0;
    std::vector<ChainMap> basis; // representatives modulo null-homotopic maps
};
// Hom in the homotopy category: chain maps modulo {dh + hd}
HomHomotopy hom_homotopy(const ProjComplex& X, const ProjComplex& Y);

// End_Hot(X) as a structure-constant algebra plus representative chain maps
struct EndAlgebra {
    SCA algebra;
    std::vector<ChainMap> reps; // basis representatives, reps[i] <-> basis i
    ChainMap realize(const ProjComplex& X, const SCA::Elem& e) const;
};
EndAlgebra end_homotopy_algebra(const ProjComplex& X);

// Krull-Schmidt decomposition in the homotopy category (input is minimized
// first; the zero complex decomposes into nothing).  Throws domain_error on
// a split failure over a non-closed field.
std::vector<ProjComplex> decompose(const ProjComplex& X, uint64_t seed = 1);

bool is_homotopy_iso(const ProjComplex& X, const ProjComplex& Y, uint64_t seed = 1);

} // namespace gentle
