#include "dot.hpp"
#include <map>
#include <sstream>

namespace gentle {

std::string quiver_dot(const AlgebraContext& ctx) {
    std::ostringstream os;
    os << "digraph quiver {\n";
    VertexTable vt;
    if (ctx.datum) vt = vertex_table(*ctx.datum);
    for (size_t v = 0; v < ctx.A->num_vertices(); ++v) {
        os << "  g" << v << " [label=\"g" << v;
        if (ctx.datum) os << " " << vt.describe((int)v);
        os << "\"];\n";
    }
    for (int b : ctx.arrow_basis()) {
        // an arrow runs from the class of its target position to the class of
        // its source position (right multiplication by the unit)
        for (const auto& [key, idx] : ctx.a_paths)
            if (idx == b) {
                os << "  g" << ctx.A->basis(b).tgt << " -> g" << ctx.A->basis(b).src
                   << " [label=\"(" << key[0] << "," << key[1] << "," << key[3] << ")\"];\n";
            }
    }
    os << "}\n";
    return os.str();
}

std::string gluing_dot(const ValidatedDatum& d, const GluingDiagram& g) {
    std::ostringstream os;
    os << "digraph gluing {\n";
    if (g.nodes.empty()) {
        os << "}\n";
        return os.str();
    }
    os << "  rankdir=LR;\n";
    for (size_t n = 0; n < g.nodes.size(); ++n) {
        os << "  n" << n << " [label=\"Q" << omega_str(g.nodes[n].om);
        if (g.mult > 1) os << "^" << g.mult;
        os << "@" << g.nodes[n].r << "\"];\n";
    }
    // one rank per degree
    std::map<int, std::vector<size_t>> by_degree;
    for (size_t n = 0; n < g.nodes.size(); ++n) by_degree[g.nodes[n].r].push_back(n);
    for (const auto& [deg, nodes] : by_degree) {
        os << "  { rank=same;";
        for (size_t n : nodes) os << " n" << n << ";";
        os << " }\n";
    }
    for (const auto& [hi, lo] : g.solid) {
        const GluingNode& a = g.nodes[hi];
        const GluingNode& b = g.nodes[lo];
        os << "  n" << hi << " -> n" << lo << " [label=\"(" << a.om.i << "," << a.om.j << ","
           << b.om.j << ")\"];\n";
    }
    for (const auto& [x, y] : g.dotted)
        os << "  n" << x << " -> n" << y << " [style=dotted, arrowhead=none];\n";
    os << "}\n";
    (void)d;
    return os.str();
}

} // namespace gentle
