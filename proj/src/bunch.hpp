#pragma once

#include "datum.hpp"
#include "qmatrix.hpp"
#include "sca.hpp"
#include "triples.hpp"
#include "words.hpp"

namespace gentle {

// One index of a bunch: two disjoint totally ordered sets (listed ascending).
struct BunchIndex {
    std::string name;
    std::vector<std::string> E, F;
};

// Bunch of (semi-)chains: indexed chains plus a partial involution; a
// self-tie makes it a bunch of semi-chains.
struct BunchOfChains {
    std::vector<BunchIndex> idx;
    std::vector<std::pair<std::string, std::string>> ties;

    void validate() const;
    bool is_semichain() const;
    // location of an element: (index position, side 0 = E / 1 = F, slot)
    struct Loc {
        int index = -1, side = 0, slot = 0;
    };
    Loc locate(const std::string& x) const;
    bool has(const std::string& x) const { return locate(x).index >= 0; }
    std::optional<std::string> partner(const std::string& x) const;
    bool dash(const std::string& x, const std::string& y) const; // x - y
    // class label in the glued set (ties merged; self-ties split into +/-
    // halves is not needed for words over chains)
    std::string class_of(const std::string& x) const;
};

// standard worked fixtures
BunchOfChains bunch_example_chains();     // two chains tied pairwise (E 5.2/5.7)
BunchOfChains bunch_example_semichains(); // the semichain variant (E 5.3/5.8)
BunchOfChains bunch_example_chessboard(int n);

// The bunch X(m, ~) of a datum on a finite degree window.
BunchOfChains bunch_of_datum(const ValidatedDatum& d, int window_lo, int window_hi);

// symbol names used by bunch_of_datum
std::string u_symbol(const Omega& om, int r);
std::string q_symbol(const Omega& om, int r, int partner, int partner_r);

// Alternating X-word x1 rho1 x2 ... (rho in {'~', '-'}); cyclic words have
// even length and close with a dash.
struct FullWord {
    std::vector<std::string> x;
    std::vector<char> rho; // size x.size()-1 (linear) or x.size() (cyclic)
    bool cyclic = false;
};

void validate_word(const BunchOfChains& B, const FullWord& w);
FullWord reverse_word(const FullWord& w);
FullWord shift_word(const FullWord& w, int k); // by k ~-pairs
int sigma_pair(const BunchOfChains& B, const std::string& a, const std::string& b);
int sigma_shift(const BunchOfChains& B, const FullWord& w, int k);

// Representation of a word: the square block matrix over the word positions
// ([w] classes), with one generator block per dash.
struct RepX {
    const BunchOfChains* bunch = nullptr;
    std::vector<std::string> position_class;
    int mult = 1;
    struct Entry {
        size_t row = 0, col = 0;  // word positions (E side row, F side col)
        std::string felem, eelem; // the generator pair omega_{f,e}
        std::string gen;          // display name "w(f,e)"
        QMatrix block;            // mult x mult
    };
    std::vector<Entry> entries;
};

RepX string_rep(const BunchOfChains& B, const FullWord& v);
RepX band_rep(const BunchOfChains& B, const FullWord& w, int mult, const Field& F,
              const FVal& pi);

// per-index matrix view: rows = F-element occurrences (in chain order), cols
// = E-element occurrences; this matches the decorated-matrix convention
struct IndexMatrixView {
    std::string index;
    std::vector<std::pair<std::string, size_t>> rows, cols; // (element, word position)
    QMatrix theta; // (rows*mult) x (cols*mult)
};
std::vector<IndexMatrixView> index_matrices(const RepX& R);

// End(R) inside el(A, B) as a structure-constant algebra (chain bunches only)
SCA rep_end_algebra(const Field& F, const RepX& R);

// full words of reduced string/band data over the datum bunch
FullWord unreduce_string(const ValidatedDatum& d, const StringDatum& v);
FullWord unreduce_band(const ValidatedDatum& d, const BandDatum& w);

// cross-module consistency: the word-side representation of unreduce(v)
// equals the decorated matrices of the triple of the string complex, block
// by block up to stripe-internal row order.  Throws on mismatch.
void cross_check_string(const AlgebraContext& ctx, const StringDatum& v);

} // namespace gentle
