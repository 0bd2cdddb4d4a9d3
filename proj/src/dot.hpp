#pragma once

#include "algebra.hpp"
#include "words.hpp"

namespace gentle {

// quiver of the algebra: vertices g0.., one arrow per length-one path
std::string quiver_dot(const AlgebraContext& ctx);

// gluing diagram: solid edges = differentials labelled by their path, dotted
// edges = ties, one rank per degree
std::string gluing_dot(const ValidatedDatum& d, const GluingDiagram& g);

} // namespace gentle
