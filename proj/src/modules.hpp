#pragma once

#include "based_algebra.hpp"

namespace gentle {

// Finite-dimensional left module over a based algebra: explicit action
// matrices per basis element.
struct FModule {
    const BasedAlgebra* alg = nullptr;
    size_t dim = 0;
    std::vector<QMatrix> act; // indexed by algebra basis element
};

FModule proj_module(const BasedAlgebra& A, int vertex);
// simple module at a simple class (top of the representative projective)
FModule simple_module(const BasedAlgebra& A, int cls);

// Minimal projective resolution of the simple at a class, truncated after
// `max_steps` syzygies.  comps[0] covers the simple; diffs[k] is the based
// matrix of the map from the (k+1)-st term to the k-th.
struct Resolution {
    bool terminated = false;
    std::vector<std::vector<int>> comps;
    std::vector<AMat> diffs;
    // projective dimension when terminated: comps.size() - 1
};

Resolution minimal_resolution(const BasedAlgebra& A, int cls, int max_steps);

} // namespace gentle
