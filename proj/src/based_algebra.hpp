#pragma once

#include "datum.hpp"
#include "qmatrix.hpp"
#include "sca.hpp"
#include <map>
#include <string>
#include <vector>

namespace gentle {

// Sparse element of a based algebra: sorted (basis index, coefficient) pairs.
using AlgElt = std::vector<std::pair<int, FVal>>;

struct BasisElem {
    int src = -1, tgt = -1; // vertex ids with e_src * b * e_tgt = b
    bool idempotent = false;
    bool radical = false;
    std::string label;
};

// Finite-dimensional algebra with a fixed basis adapted to a complete set of
// orthogonal idempotents: basis = {e_v} plus elements b with e_src b e_tgt = b.
// This is the carrier for the algebras A, H and B and for the fat-point probe.
class BasedAlgebra {
public:
    BasedAlgebra(Field F, std::vector<std::string> vertex_labels,
                 std::vector<BasisElem> basis,
                 std::map<std::pair<int, int>, AlgElt> table, bool check = true);

    const Field& field() const { return F_; }
    size_t dim() const { return basis_.size(); }
    size_t num_vertices() const { return vertex_labels_.size(); }
    const std::string& vertex_label(int v) const { return vertex_labels_[v]; }
    const BasisElem& basis(int i) const { return basis_[i]; }
    int idempotent_index(int v) const { return idem_of_vertex_[v]; }

    // element algebra
    AlgElt zero() const { return {}; }
    AlgElt unit() const;
    AlgElt elt(int basis_idx, FVal c) const;
    AlgElt add(const AlgElt& a, const AlgElt& b) const;
    AlgElt sub(const AlgElt& a, const AlgElt& b) const;
    AlgElt scale(const FVal& c, const AlgElt& a) const;
    AlgElt mul(const AlgElt& a, const AlgElt& b) const;
    bool is_zero(const AlgElt& a) const { return a.empty(); }
    bool eq(const AlgElt& a, const AlgElt& b) const;
    // coefficient of the source-vertex idempotent (the scalar part mod radical);
    // zero unless src == tgt for every nonzero term
    FVal scalar_part(const AlgElt& a, int v) const;
    bool in_radical(const AlgElt& a) const;
    std::string to_string(const AlgElt& a) const;

    // Hom(P_v, P_w) = e_v A e_w, as basis indices
    const std::vector<int>& hom_basis(int v, int w) const;
    // basis of the left projective P_v = A e_v (basis indices with tgt == v)
    const std::vector<int>& proj_basis(int v) const;

    // left multiplication by a on P_v, as a matrix in the proj_basis coordinates
    QMatrix left_action(const AlgElt& a, int v) const;

    // Simple classes: vertices whose projectives are isomorphic (detected via
    // degree-zero non-radical elements between distinct vertices).  For basic
    // algebras every vertex is its own class.
    const std::vector<std::vector<int>>& simple_classes() const { return classes_; }
    int class_of_vertex(int v) const { return class_of_vertex_[v]; }

    SCA to_sca() const; // for the generic radical / idempotent kernel

private:
    void verify_structure() const;
    Field F_;
    std::vector<std::string> vertex_labels_;
    std::vector<BasisElem> basis_;
    std::map<std::pair<int, int>, AlgElt> table_;
    std::vector<int> idem_of_vertex_;
    std::vector<std::vector<int>> hom_;  // (v,w) -> indices, flattened v*V+w
    std::vector<std::vector<int>> proj_; // v -> indices
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_vertex_;
};

// Matrix over a based algebra: entry (q, p) lies in Hom(P_{col_v[p]}, P_{row_v[q]})
// and acts by right multiplication.  compose(second, first) is "first, then
// second": entry (s, p) = sum_q first(q, p) * second(s, q).
struct AMat {
    std::vector<int> row_v, col_v;
    std::vector<AlgElt> e; // row-major, size row_v.size() * col_v.size()

    AMat() = default;
    AMat(std::vector<int> rows, std::vector<int> cols);
    AlgElt& at(size_t q, size_t p) { return e[q * col_v.size() + p]; }
    const AlgElt& at(size_t q, size_t p) const { return e[q * col_v.size() + p]; }
    size_t rows() const { return row_v.size(); }
    size_t cols() const { return col_v.size(); }
    bool is_zero(const BasedAlgebra& A) const;
};

AMat amat_identity(const BasedAlgebra& A, const std::vector<int>& verts);
AMat amat_compose(const BasedAlgebra& A, const AMat& second, const AMat& first);
AMat amat_add(const BasedAlgebra& A, const AMat& a, const AMat& b);
AMat amat_sub(const BasedAlgebra& A, const AMat& a, const AMat& b);
AMat amat_scale(const BasedAlgebra& A, const FVal& c, const AMat& a);
bool amat_eq(const BasedAlgebra& A, const AMat& a, const AMat& b);
// inverse of a square AMat (solves in the expanded scalar coordinates)
std::optional<AMat> amat_inverse(const BasedAlgebra& A, const AMat& m);

// Expansion of a direct sum of projectives to scalar coordinates.
struct SumExpansion {
    std::vector<std::pair<int, int>> coords; // (component index, proj_basis offset)
    std::vector<size_t> comp_start;          // first coordinate of each component
    size_t dim() const { return coords.size(); }
};
SumExpansion expand_sum(const BasedAlgebra& A, const std::vector<int>& verts);

// scalar matrix of the right-multiplication map described by an AMat,
// in the SumExpansion coordinate systems of its column/row vertex lists
QMatrix amat_scalar_matrix(const BasedAlgebra& A, const AMat& m);

// Solve for an AMat: given target vectors t_p (columns over the expansion of
// row_verts) find entries u[q][p] in Hom(col_v[p], row_v[q]) with
// sum_q gen_q . u[q][p] = t_p, where gen_q are the idempotent generators of
// the row components.  Used when re-expressing module maps in based form.
// (Helper for modules/triples; returns nullopt when inconsistent.)
std::optional<AMat> amat_from_images(const BasedAlgebra& A,
                                     const std::vector<int>& col_verts,
                                     const std::vector<int>& row_verts,
                                     const QMatrix& images,
                                     bool radical_only = false);

} // namespace gentle
