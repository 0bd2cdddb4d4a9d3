#include "jsonio.hpp"

namespace gentle {

namespace {

[[noreturn]] void bad(const std::string& what) { throw domain_error("bad input: " + what); }

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

} // namespace

Datum datum_from_json(const json& j) {
    if (!j.is_object()) bad("datum must be an object");
    if (!j.contains("m") || !j["m"].is_array()) bad("datum needs an array \"m\"");
    Datum d;
    for (const auto& v : j["m"]) d.m.push_back(as_int(v, "chain length"));
    if (j.contains("relations")) {
        if (!j["relations"].is_array()) bad("\"relations\" must be an array");
        for (const auto& rel : j["relations"]) {
            if (!rel.is_array() || rel.size() != 2) bad("relation must be a pair");
            auto pos = [&](const json& p) -> Omega {
                if (!p.is_array() || p.size() != 2) bad("relation entry must be [i,j]");
                return {as_int(p[0], "chain index"), as_int(p[1], "position")};
            };
            d.relations.push_back({pos(rel[0]), pos(rel[1])});
        }
    }
    return d;
}

json datum_to_json(const Datum& d) {
    json j;
    j["m"] = d.m;
    json rel = json::array();
    for (const auto& r : d.relations)
        rel.push_back({{r.first.i, r.first.j}, {r.second.i, r.second.j}});
    j["relations"] = std::move(rel);
    return j;
}

json index_sets_to_json(const ValidatedDatum& d) {
    IndexSets s = build_index_sets(d);
    json j;
    json om = json::array();
    for (const auto& x : s.omega) om.push_back({x.i, x.j});
    j["omega"] = std::move(om);
    json ob = json::array();
    for (const auto& [x, sign] : s.omega_bar) {
        json e = {{"pos", {x.i, x.j}}};
        if (sign != 0) e["sign"] = sign > 0 ? "+" : "-";
        ob.push_back(std::move(e));
    }
    j["omegaBar"] = std::move(ob);
    json ot = json::array();
    for (const auto& c : s.omega_tilde) {
        json e;
        e["type"] = c.type == VertexType::First ? "first"
                    : c.type == VertexType::Second ? "second" : "third";
        json preds = json::array();
        for (const auto& p : c.preds) preds.push_back({p.i, p.j});
        e["preds"] = std::move(preds);
        if (c.type == VertexType::Second) e["sign"] = c.sign > 0 ? "+" : "-";
        ot.push_back(std::move(e));
    }
    j["omegaTilde"] = std::move(ot);
    json oh = json::array();
    for (const auto& cls : s.omega_hat) {
        json e = json::array();
        for (const auto& p : cls) e.push_back({p.i, p.j});
        oh.push_back(std::move(e));
    }
    j["omegaHat"] = std::move(oh);
    j["gentle"] = d.is_gentle();
    return j;
}

json special_cycles_to_json(const ValidatedDatum& d) {
    json cycles = json::array();
    for (const auto& c : special_cycles(d)) {
        json e = json::array();
        for (const auto& x : c) e.push_back({x.i, x.j});
        cycles.push_back(std::move(e));
    }
    return json{{"cycles", std::move(cycles)}};
}

json algebra_info_to_json(const AlgebraContext& ctx) {
    json j;
    j["dimA"] = ctx.A->dim();
    j["dimH"] = ctx.H->dim();
    j["dimRadical"] = ctx.dim_I();
    json verts = json::array();
    VertexTable vt;
    if (ctx.datum) vt = vertex_table(*ctx.datum);
    for (size_t v = 0; v < ctx.A->num_vertices(); ++v) {
        json e;
        e["label"] = "g" + std::to_string(v);
        if (ctx.datum) e["describes"] = vt.describe((int)v);
        e["dimP"] = ctx.A->proj_basis((int)v).size();
        verts.push_back(std::move(e));
    }
    j["vertices"] = std::move(verts);
    size_t paths = 0;
    for (size_t i = 0; i < ctx.A->dim(); ++i)
        if (!ctx.A->basis((int)i).idempotent) ++paths;
    j["basisPaths"] = paths;
    if (ctx.datum) {
        j["gentle"] = ctx.datum->is_gentle();
        j["skewGentle"] = !ctx.datum->is_gentle();
    }
    return j;
}

AnyWord word_from_json(const Field& F, const json& j) {
    if (!j.is_object() || !j.contains("kind")) bad("word needs a \"kind\"");
    AnyWord w;
    std::string kind = j["kind"].get<std::string>();
    if (kind == "band") w.band = true;
    else if (kind != "string") bad("word kind must be \"string\" or \"band\"");
    if (!j.contains("segments") || !j["segments"].is_array()) bad("word needs \"segments\"");
    std::vector<Segment> segs;
    for (const auto& s : j["segments"]) {
        Segment seg;
        seg.i = as_int(s.at("i"), "segment chain");
        seg.a = as_int(s.at("a"), "segment a");
        seg.b = as_int(s.at("b"), "segment b");
        seg.r = as_int(s.at("r"), "segment degree");
        std::string orient = s.value("orient", "low-first");
        if (orient == "low-first") seg.low_first = true;
        else if (orient == "high-first") seg.low_first = false;
        else bad("segment orient must be low-first or high-first");
        segs.push_back(seg);
    }
    if (w.band) {
        w.bnd.segs = std::move(segs);
        w.bnd.mult = j.value("m", 1);
        w.bnd.pi = F.parse_value(j.value("pi", "1"));
    } else {
        w.str.segs = std::move(segs);
    }
    return w;
}

json word_to_json(const AnyWord& w) {
    json j;
    j["kind"] = w.band ? "band" : "string";
    json segs = json::array();
    const auto& list = w.band ? w.bnd.segs : w.str.segs;
    for (const auto& s : list) {
        segs.push_back({{"i", s.i},
                        {"a", s.a},
                        {"b", s.b},
                        {"r", s.r},
                        {"orient", s.low_first ? "low-first" : "high-first"}});
    }
    j["segments"] = std::move(segs);
    if (w.band) {
        j["m"] = w.bnd.mult;
        j["pi"] = Field::to_string(w.bnd.pi);
    }
    return j;
}

namespace {

int vertex_from_label(const AlgebraContext& ctx, const std::string& lbl) {
    if (lbl.size() < 2 || lbl[0] != 'g') bad("vertex label must look like \"g0\"");
    int v = 0;
    try {
        v = std::stoi(lbl.substr(1));
    } catch (...) {
        bad("vertex label must look like \"g0\"");
    }
    if (v < 0 || v >= (int)ctx.A->num_vertices()) bad("vertex label out of range: " + lbl);
    return v;
}

AlgElt entry_from_json(const AlgebraContext& ctx, const json& j, int src, int tgt) {
    const BasedAlgebra& A = *ctx.A;
    if (!j.is_array()) bad("differential entry must be a list of terms");
    AlgElt out;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2) bad("entry term must be [coeff, path]");
        FVal c = ctx.F.parse_value(term[0].is_string() ? term[0].get<std::string>()
                                                       : term[0].dump());
        int bidx = -1;
        if (term[1].is_string() && term[1] == "e") {
            if (src != tgt) bad("idempotent term needs equal source and target");
            bidx = A.idempotent_index(src);
        } else if (term[1].is_array() && term[1].size() == 3) {
            bidx = ctx.a_path(as_int(term[1][0], "i"), as_int(term[1][1], "a"),
                              as_int(term[1][2], "b"));
        } else if (term[1].is_array() && term[1].size() == 5) {
            auto sgn = [&](const json& v) -> int {
                std::string s = v.get<std::string>();
                return s == "+" ? 1 : s == "-" ? -1 : 0;
            };
            bidx = ctx.a_path(as_int(term[1][0], "i"), as_int(term[1][1], "a"),
                              as_int(term[1][3], "b"), sgn(term[1][2]), sgn(term[1][4]));
        } else {
            bad("entry term path must be [i,a,b], [i,a,sa,b,sb] or \"e\"");
        }
        if (bidx < 0) bad("no such path in the algebra");
        if (A.basis(bidx).src != src || A.basis(bidx).tgt != tgt)
            bad("path does not lie in the entry's Hom space");
        out = A.add(out, A.elt(bidx, c));
    }
    return out;
}

json entry_to_json(const AlgebraContext& ctx, const AlgElt& e) {
    const BasedAlgebra& A = *ctx.A;
    json out = json::array();
    for (const auto& [bidx, c] : e) {
        const BasisElem& b = A.basis(bidx);
        if (b.idempotent) {
            out.push_back({Field::to_string(c), "e"});
            continue;
        }
        // find the unit data through the path tables
        bool done = false;
        for (const auto& [key, idx] : ctx.a_paths)
            if (idx == bidx) {
                if (key[2] == 0 && key[4] == 0) {
                    out.push_back({Field::to_string(c), {key[0], key[1], key[3]}});
                } else {
                    auto sgn = [](int s) { return s > 0 ? "+" : s < 0 ? "-" : ""; };
                    out.push_back({Field::to_string(c),
                                   {key[0], key[1], sgn(key[2]), key[3], sgn(key[4])}});
                }
                done = true;
            }
        if (!done) bad("basis element without path data");
    }
    return out;
}

} // namespace

ProjComplex complex_from_json(const AlgebraContext& ctx, const json& j) {
    if (!j.is_object() || !j.contains("degrees")) bad("complex needs \"degrees\"");
    std::map<int, std::vector<int>> comps;
    for (const auto& [key, val] : j["degrees"].items()) {
        int deg = 0;
        try {
            deg = std::stoi(key);
        } catch (...) {
            bad("degree keys must be integers");
        }
        std::vector<int> c;
        for (const auto& lbl : val) c.push_back(vertex_from_label(ctx, lbl.get<std::string>()));
        comps[deg] = std::move(c);
    }
    if (comps.empty()) return zero_complex(*ctx.A);
    int lo = comps.begin()->first, hi = comps.rbegin()->first;
    std::vector<std::vector<int>> clist;
    for (int d = lo; d <= hi; ++d) clist.push_back(comps.count(d) ? comps[d] : std::vector<int>{});
    std::vector<AMat> diffs;
    for (int d = lo; d < hi; ++d) {
        AMat m(clist[d + 1 - lo], clist[d - lo]);
        diffs.push_back(std::move(m));
    }
    if (j.contains("diff")) {
        for (const auto& [key, val] : j["diff"].items()) {
            int deg = std::stoi(key);
            if (deg < lo || deg >= hi) bad("differential at degree " + key + " out of range");
            AMat& m = diffs[deg - lo];
            if (!val.is_array() || val.size() != m.rows()) bad("differential row count mismatch");
            for (size_t q = 0; q < m.rows(); ++q) {
                if (!val[q].is_array() || val[q].size() != m.cols())
                    bad("differential column count mismatch");
                for (size_t p = 0; p < m.cols(); ++p)
                    m.at(q, p) = entry_from_json(ctx, val[q][p], m.col_v[p], m.row_v[q]);
            }
        }
    }
    return make_complex(*ctx.A, lo, std::move(clist), std::move(diffs));
}

json complex_to_json(const AlgebraContext& ctx, const ProjComplex& X) {
    json j;
    json degs = json::object();
    for (size_t k = 0; k < X.comps.size(); ++k) {
        json c = json::array();
        for (int v : X.comps[k]) c.push_back("g" + std::to_string(v));
        degs[std::to_string(X.lo + (int)k)] = std::move(c);
    }
    j["degrees"] = std::move(degs);
    json diffs = json::object();
    for (size_t k = 0; k + 1 < X.comps.size(); ++k) {
        json rows = json::array();
        for (size_t q = 0; q < X.diffs[k].rows(); ++q) {
            json row = json::array();
            for (size_t p = 0; p < X.diffs[k].cols(); ++p)
                row.push_back(entry_to_json(ctx, X.diffs[k].at(q, p)));
            rows.push_back(std::move(row));
        }
        diffs[std::to_string(X.lo + (int)k)] = std::move(rows);
    }
    j["diff"] = std::move(diffs);
    return j;
}

json cohomology_to_json(const AlgebraContext& ctx, const ProjComplex& X) {
    CohomologyDims h = cohomology_dims(X);
    json j;
    json per = json::object();
    for (size_t k = 0; k < h.dims.size(); ++k) {
        json row = json::object();
        for (size_t v = 0; v < h.dims[k].size(); ++v)
            if (h.dims[k][v] > 0) row["g" + std::to_string(v)] = h.dims[k][v];
        per[std::to_string(h.lo + (int)k)] = std::move(row);
    }
    j["byDegree"] = std::move(per);
    j["totals"] = h.totals();
    (void)ctx;
    return j;
}

json certificate_to_json(const GenerationCertificate& c) {
    json j;
    auto side = [](const std::map<std::pair<std::array<int, 3>, int>, size_t>& m) {
        json out = json::array();
        for (const auto& [key, mult] : m) {
            json e;
            e["member"] = {key.first[0], key.first[1], key.first[2]};
            e["position"] = key.second;
            e["multiplicity"] = mult;
            out.push_back(std::move(e));
        }
        return out;
    };
    j["right"] = side(c.right);
    j["leftShifted"] = side(c.left);
    j["exact"] = c.exact;
    j["eulerConsistent"] = c.euler_consistent;
    j["generated"] = c.exact && c.euler_consistent;
    return j;
}

json bunch_to_json(const BunchOfChains& B) {
    json j;
    json idx = json::array();
    for (const auto& ix : B.idx) {
        json e;
        e["index"] = ix.name;
        e["E"] = ix.E;
        e["F"] = ix.F;
        idx.push_back(std::move(e));
    }
    j["sigma"] = std::move(idx);
    json ties = json::array();
    for (const auto& [a, b] : B.ties) ties.push_back({a, b});
    j["ties"] = std::move(ties);
    j["semichain"] = B.is_semichain();
    return j;
}

} // namespace gentle
