#pragma once

#include "based_algebra.hpp"
#include <array>
#include <memory>

namespace gentle {

// A diagonal position of the normalization: level j of chain i, with a sign
// slot for blown-up levels (sign 0 = not blown).
struct DiagPos {
    int i = 0, j = 0, sign = 0;
    auto operator<=>(const DiagPos&) const = default;
};
std::string diagpos_str(const DiagPos& p);

// Matrix-unit description of a based algebra sitting inside the product of
// blown-up triangular algebras: chain lengths plus a partition of the
// diagonal positions (the classes whose diagonal entries are glued).
// Datum algebras use classes of size <= 2; the fat-point probe glues one
// large class (the generalized setting).
struct GluedSpec {
    std::vector<int> m;
    std::vector<std::vector<DiagPos>> classes;
};

// The working pair A c H with shared radical, plus all index bookkeeping.
struct AlgebraContext {
    Field F;
    std::vector<int> m;
    std::optional<ValidatedDatum> datum; // engaged for datum-built contexts
    bool gentle = true;

    std::unique_ptr<BasedAlgebra> A;
    std::unique_ptr<BasedAlgebra> H;

    std::vector<std::vector<DiagPos>> classes;  // A-vertex -> predecessors
    std::vector<DiagPos> hpos;                  // H-vertex -> position
    std::vector<AlgElt> embed;                  // A basis index -> element of H

    int h_vertex(const DiagPos& p) const;
    int a_class(const DiagPos& p) const;
    size_t dim_I() const; // dimension of the shared radical

    // strictly-lower matrix unit E_{(i,a,sa),(i,b,sb)} as a basis index, -1 if absent
    std::map<std::array<int, 5>, int> a_paths, h_paths;
    int a_path(int i, int a, int b, int sa = 0, int sb = 0) const;
    int h_path(int i, int a, int b, int sa = 0, int sb = 0) const;

    // basis index in A of the length-one path (i, j+1, j) with the given
    // signs; every arrow of the quiver is one of these
    std::vector<int> arrow_basis() const;
};

AlgebraContext build_glued_context(const Field& F, const GluedSpec& spec);
AlgebraContext build_datum_context(const Field& F, const ValidatedDatum& d);
// A = k[eps_1..eps_n]/(eps_i eps_j), H = T_2^n  (the fat point probe)
AlgebraContext build_fat_point_context(const Field& F, int n);

// The 2x2 resolution algebra B = [[A, H], [I, H]] over a context, together
// with its vertex bookkeeping and the datum witnessing that B is again of
// the same kind.
struct ResolutionAlgebra {
    std::unique_ptr<BasedAlgebra> B;
    std::vector<int> aa_vertex; // A-vertex -> B-vertex
    std::vector<int> hh_vertex; // H-vertex -> B-vertex
    Datum witness;              // only for datum-built contexts
    bool witness_gentle = false;
};

ResolutionAlgebra build_resolution_algebra(const AlgebraContext& ctx);

// Structural agreement between B and the algebra of its witness datum:
// vertex bijection with equal Hom dimensions everywhere, equal total
// dimension, matching gentleness.  Throws on mismatch.
void check_witness(const AlgebraContext& ctx, const ResolutionAlgebra& res);

} // namespace gentle
