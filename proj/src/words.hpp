#pragma once

#include "algebra.hpp"
#include "complexes.hpp"
#include "modules.hpp"

namespace gentle {

// One reduced-word letter: the two-term summand W(i,(a,b))[-r], entered at
// its low end ((i,b), r) or its high end ((i,a), r-1).  a = m_i + 1 encodes
// the one-ended stalk Q_b[-r].
struct Segment {
    int i = 0, a = 0, b = 0, r = 0;
    bool low_first = true;
    auto operator<=>(const Segment&) const = default;
};

struct WordEnd {
    Omega om;
    int r = 0;
};

struct StringDatum {
    std::vector<Segment> segs;
};

struct BandDatum {
    std::vector<Segment> segs; // cyclic, no stalks
    int mult = 1;
    FVal pi;
};

bool is_stalk(const ValidatedDatum& d, const Segment& s);
WordEnd entry_end(const ValidatedDatum& d, const Segment& s);
WordEnd exit_end(const ValidatedDatum& d, const Segment& s);

enum class StringType { BothUntied, LeftStalk, RightStalk, BothStalk };

// full adjacency / endpoint validation; throws domain_error with the reason
StringType validate_string(const ValidatedDatum& d, const StringDatum& v);
void validate_band(const ValidatedDatum& d, const BandDatum& w);

StringDatum reverse_string(const ValidatedDatum& d, const StringDatum& v);
bool string_equivalent(const ValidatedDatum& d, const StringDatum& a, const StringDatum& b);
// rotation / reversal equivalence with pi vs pi^{-1}
bool band_equivalent(const Field& F, const ValidatedDatum& d, const BandDatum& a,
                     const BandDatum& b);

// gluing diagram (also feeds the DOT rendering)
struct GluingNode {
    int seg = 0;
    int end = 0; // 0 = low, 1 = high
    Omega om;
    int r = 0;
};
struct GluingDiagram {
    std::vector<GluingNode> nodes;
    std::vector<std::pair<size_t, size_t>> solid;  // per two-term segment: high -> low
    std::vector<std::pair<size_t, size_t>> dotted; // tie pairs
    int mult = 1;
};
GluingDiagram string_gluing(const ValidatedDatum& d, const StringDatum& v);
GluingDiagram band_gluing(const ValidatedDatum& d, const BandDatum& w);

ProjComplex string_complex(const AlgebraContext& ctx, const StringDatum& v);
ProjComplex band_complex(const AlgebraContext& ctx, const BandDatum& w);

// exhaustive enumeration, duplicate-free up to reversal; maxSegments counts
// every letter including the stalk caps
std::vector<StringDatum> enumerate_strings(const ValidatedDatum& d, int max_segments,
                                           int window_lo, int window_hi);
// band skeletons (without multiplicity and eigenvalue), up to rotation and
// reversal, degrees normalized so the maximal occupied degree is 0
std::vector<std::vector<Segment>> enumerate_bands(const ValidatedDatum& d, int max_segments);

// finite window cut of the infinite string that follows a special cycle from
// the seed's trailing end; the cut leaves a dangling tied end by design
struct TruncatedString {
    ProjComplex complex;
    bool cut = false; // true when the window truncated the tail
};
TruncatedString truncated_infinite_string(const AlgebraContext& ctx, const StringDatum& seed,
                                          const std::vector<Omega>& cycle, int window_lo,
                                          int window_hi);

// minimal projective resolution of the simple at a vertex class, as a complex
// in degrees [-N, 0]; terminated = the kernel vanished within N steps
struct ResolutionComplex {
    ProjComplex complex;
    bool terminated = false;
    size_t length = 0;
};
ResolutionComplex projective_resolution(const BasedAlgebra& A, int cls, int N);

} // namespace gentle
