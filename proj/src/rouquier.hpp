#pragma once

#include "triples.hpp"

namespace gentle {

// One indecomposable module over the normalization, W_{(i,(a,b))} =
// Q_{(i,b)} / Q_{(i,a)} (a = m_i + 1 gives the projective Q_{(i,b)} itself),
// viewed as a module over A.  The simple at level j is the member with
// a = b + 1.
struct ZMember {
    int i = 0, a = 0, b = 0;
    size_t dim() const { return (size_t)(a - b); }
    auto operator<=>(const ZMember&) const = default;
};

struct GeneratorZ {
    std::vector<ZMember> members;
    // identification of each simple (vertex class) with a member, through a
    // chosen predecessor position
    std::vector<std::pair<int, ZMember>> simple_of_class; // (class, member)
};

GeneratorZ build_generator(const AlgebraContext& ctx);

// An explicit witness that X lies in <Z>_2: the degreewise short exact
// sequence 0 -> X -> Y (+) V -> Ybar -> 0 with both outer terms split into
// shifts of Z-members.
struct GenerationCertificate {
    // right-hand object Y (+) V: (member, homological position, multiplicity)
    std::map<std::pair<std::array<int, 3>, int>, size_t> right;
    // left-hand object Ybar[-1]: recorded at the degree of Ybar
    std::map<std::pair<std::array<int, 3>, int>, size_t> left;
    bool exact = false;
    // Euler check: alternating dims of X match (Y+V) minus Ybar
    bool euler_consistent = false;
};

GenerationCertificate generation_certificate(const AlgebraContext& ctx, const ProjComplex& X);

// Example fixture: A = k[eps_1..eps_n]/(eps_i eps_j) with H = T_2^n; runs the
// certificate on the length-N truncated minimal resolution of the simple.
struct FatPointReport {
    int n = 0;
    size_t dimA = 0, dimH = 0;
    bool certificate_ok = false;
};
FatPointReport fat_point_probe(const Field& F, int n, int resolution_length = 3);

} // namespace gentle
