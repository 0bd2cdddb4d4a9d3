#pragma once

#include "bunch.hpp"
#include "rouquier.hpp"
#include "words.hpp"
#include <json.hpp>

namespace gentle {

using json = nlohmann::ordered_json;

// datum: {"m":[3,3],"relations":[[[1,1],[2,1]],...]} (1-indexed, a pair with
// equal entries encodes a self-equivalence)
Datum datum_from_json(const json& j);
json datum_to_json(const Datum& d);

json index_sets_to_json(const ValidatedDatum& d);
json special_cycles_to_json(const ValidatedDatum& d);
json algebra_info_to_json(const AlgebraContext& ctx);

// words: {"kind":"string"|"band","segments":[{"i":1,"a":3,"b":2,"r":-1,
// "orient":"low-first"},...],"m":1,"pi":"2"}
struct AnyWord {
    bool band = false;
    StringDatum str;
    BandDatum bnd;
};
AnyWord word_from_json(const Field& F, const json& j);
json word_to_json(const AnyWord& w);

// complexes: {"degrees":{"-1":["g1","g1"],"0":["g0"]},"diff":{"-1":[[entry..]..]}}
// entry = list of terms [coeff, [i,a,b]] (paths, signed levels for blown
// positions: [i,a,sa,b,sb]) or [coeff, "e"]
ProjComplex complex_from_json(const AlgebraContext& ctx, const json& j);
json complex_to_json(const AlgebraContext& ctx, const ProjComplex& X);

json cohomology_to_json(const AlgebraContext& ctx, const ProjComplex& X);
json certificate_to_json(const GenerationCertificate& c);
json bunch_to_json(const BunchOfChains& B);

} // namespace gentle
