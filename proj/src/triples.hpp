#pragma once

#include "algebra.hpp"
#include "complexes.hpp"
#include <random>

namespace gentle {

// Stripe symbol of the block at ((i,j), r): partner level plus the degree
// direction.  dir = -1: this occurrence is the target end of a two-term
// summand whose source sits in degree r-1 (partner = a, or m_i+1 for a
// stalk); dir = +1: source end, partner = b in degree r+1.
struct StripeLabel {
    int partner = 0;
    int dir = 0;
    auto operator<=>(const StripeLabel&) const = default;
};

// position in the total order on the stripe symbols of a block at level j,
// chain length m
int stripe_rank(const StripeLabel& l, int j, int m);

// Indecomposable two-term summand W(i,(a,b))[-r] (a = m_i+1 encodes the
// stalk Q_b[-r]); the source Q_a sits in degree r-1, the target Q_b in r.
struct WCopy {
    int i = 0, a = 0, b = 0, r = 0;
    bool stalk(const std::vector<int>& m) const { return a == m[i - 1] + 1; }
};

// Splitting of a minimal complex over the hereditary normalization into
// W-summands, with the change of basis that realizes it.
struct SplitY {
    int lo = 0;
    std::vector<WCopy> summands;
    // per degree: the Q-occurrences in the split basis, as (summand, end)
    // with end 0 = target (level b, degree r) and 1 = source (level a, r-1)
    std::vector<std::vector<std::pair<int, int>>> occ;
    std::vector<std::vector<int>> levels; // per degree: (chain, level) of each position
    std::vector<std::vector<int>> chains;
    // accumulated automorphism per degree: d_split = U d_orig U^{-1}; entries
    // are coefficients of the level-to-level morphisms (identity on the
    // diagonal levels, kappa below)
    std::vector<QMatrix> U;
};

SplitY split_h_complex(const AlgebraContext& ctx, const ProjComplex& Y);

// multiset view: (i,a,b,shift) -> multiplicity
std::map<std::array<int, 4>, size_t> split_multiset(const SplitY& s);

// The triple E(X) = (Y, V, theta) of a minimal complex over A.
struct Triple {
    const AlgebraContext* ctx = nullptr;
    ProjComplex Y; // over ctx->H
    int vlo = 0;
    std::vector<std::vector<int>> V; // per degree: class of each copy
    // theta per (omega position, degree): rows = Q-occurrences of Y^r at that
    // position (in component order), cols = V-copies whose class contains it
    std::map<std::pair<Omega, int>, QMatrix> theta;
};

Triple triple_of(const AlgebraContext& ctx, const ProjComplex& X);

// One block Theta^r_{(i,j)} with its stripe decoration.
struct ThetaBlock {
    Omega pos;
    int r = 0;
    QMatrix theta;
    std::vector<StripeLabel> row_label; // per row, weakly increasing in F-order
    std::vector<int> row_summand;       // per row: W-copy id (aligns conjugate stripes)
    std::vector<std::pair<int, int>> col_label; // per column: (class, copy index)
};

struct DecoratedMatrices {
    const AlgebraContext* ctx = nullptr;
    std::vector<WCopy> summands;
    std::vector<ThetaBlock> blocks; // sorted by (r, pos)
    std::map<std::pair<int, int>, size_t> v_mult; // (class, r) -> V-copy count

    ThetaBlock* find(const Omega& pos, int r);
    const ThetaBlock* find(const Omega& pos, int r) const;
};

DecoratedMatrices decorated_matrices(const Triple& T);

// structural sanity: tied blocks share column labels, conjugate stripes have
// equal row counts; throws on violation
void validate_decoration(const DecoratedMatrices& dm);
bool all_blocks_square_invertible(const DecoratedMatrices& dm);

// The reconstruction K: pullback complex of projective A-modules.  Requires
// every block square and invertible.
ProjComplex reconstruct_from_decorated(const DecoratedMatrices& dm);
ProjComplex reconstruct(const Triple& T);

// ---- admissible transformations of the decorated matrix problem ----

struct AdmissibleTransform {
    // column side: per (class, degree), an invertible matrix applied
    // simultaneously to that class's columns in every block containing it
    std::map<std::pair<int, int>, QMatrix> col_ops;
    // row side, per block: an F-order-lower-triangular matrix with the
    // diagonal stripe blocks invertible and conjugate stripes sharing them
    std::map<std::pair<Omega, int>, QMatrix> row_ops;
};

// checks admissibility against dm's stripe structure; throws on violation
void apply_transformation(DecoratedMatrices& dm, const AdmissibleTransform& t);

AdmissibleTransform random_admissible_transform(const DecoratedMatrices& dm,
                                                std::mt19937_64& rng, int n_ops = 12);

} // namespace gentle
