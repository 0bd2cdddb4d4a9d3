#include "algebra.hpp"
#include <algorithm>
#include <map>
#include <set>

namespace gentle {

std::string diagpos_str(const DiagPos& p) {
    std::string s = "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
    if (p.sign > 0) s += "+";
    if (p.sign < 0) s += "-";
    return s;
}

namespace {

// matrix unit E_{P,Q} of the blown-up triangular product
struct Unit {
    DiagPos p, q;
    auto operator<=>(const Unit&) const = default;
};

using UnitSet = std::vector<Unit>; // sorted

UnitSet uset_mul(const UnitSet& a, const UnitSet& b) {
    UnitSet r;
    for (const auto& u : a)
        for (const auto& v : b)
            if (u.q == v.p) r.push_back({u.p, v.q});
    std::sort(r.begin(), r.end());
    return r;
}

struct SpecTables {
    std::vector<int> m;
    std::vector<std::set<int>> blown; // per chain: blown levels
    std::vector<DiagPos> diag;        // all diagonal positions, sorted

    bool is_blown(int i, int j) const { return blown[i - 1].count(j) > 0; }
    std::vector<DiagPos> positions_at(int i, int j) const {
        if (is_blown(i, j)) return {{i, j, +1}, {i, j, -1}};
        return {{i, j, 0}};
    }
};

SpecTables spec_tables(const GluedSpec& spec) {
    SpecTables t;
    t.m = spec.m;
    t.blown.resize(spec.m.size());
    for (const auto& cls : spec.classes)
        for (const auto& p : cls)
            if (p.sign != 0) t.blown[p.i - 1].insert(p.j);
    for (int i = 1; i <= (int)spec.m.size(); ++i)
        for (int j = 1; j <= spec.m[i - 1]; ++j)
            for (const auto& p : t.positions_at(i, j)) t.diag.push_back(p);
    std::sort(t.diag.begin(), t.diag.end());
    return t;
}

void validate_spec(const GluedSpec& spec, const SpecTables& t) {
    std::set<DiagPos> seen;
    for (const auto& cls : spec.classes) {
        if (cls.empty()) throw domain_error("glued spec: empty class");
        for (const auto& p : cls) {
            if (p.i < 1 || p.i > (int)spec.m.size() || p.j < 1 || p.j > spec.m[p.i - 1])
                throw domain_error("glued spec: position out of range");
            if ((p.sign != 0) != t.is_blown(p.i, p.j))
                throw domain_error("glued spec: inconsistent sign slots at " + diagpos_str(p));
            if (seen.count(p)) throw domain_error("glued spec: position repeated");
            seen.insert(p);
        }
    }
    if (seen.size() != t.diag.size())
        throw domain_error("glued spec: classes do not cover the diagonal");
}

// all units of H = prod T_{m_i, Sigma_i}: strictly lower plus diagonal blocks
std::vector<Unit> h_units(const SpecTables& t) {
    std::vector<Unit> units;
    for (int i = 1; i <= (int)t.m.size(); ++i)
        for (int a = 1; a <= t.m[i - 1]; ++a)
            for (int b = 1; b <= a; ++b)
                for (const auto& P : t.positions_at(i, a))
                    for (const auto& Q : t.positions_at(i, b)) {
                        if (a == b && P.sign != Q.sign && P.sign == 0) continue;
                        units.push_back({P, Q});
                    }
    std::sort(units.begin(), units.end());
    return units;
}

std::string unit_label(const Unit& u) {
    if (u.p.sign == 0 && u.q.sign == 0)
        return "p(" + std::to_string(u.p.i) + "," + std::to_string(u.p.j) + "," +
               std::to_string(u.q.j) + ")";
    return "p" + diagpos_str(u.p) + diagpos_str(u.q);
}

} // namespace

int AlgebraContext::h_vertex(const DiagPos& p) const {
    for (size_t k = 0; k < hpos.size(); ++k)
        if (hpos[k] == p) return static_cast<int>(k);
    throw domain_error("no H vertex at " + diagpos_str(p));
}

int AlgebraContext::a_class(const DiagPos& p) const {
    for (size_t k = 0; k < classes.size(); ++k)
        for (const auto& q : classes[k])
            if (q == p) return static_cast<int>(k);
    throw domain_error("no class contains " + diagpos_str(p));
}

size_t AlgebraContext::dim_I() const {
    size_t n = 0;
    for (size_t i = 0; i < H->dim(); ++i)
        if (H->basis(i).radical) ++n;
    return n;
}

int AlgebraContext::a_path(int i, int a, int b, int sa, int sb) const {
    auto it = a_paths.find({i, a, sa, b, sb});
    return it == a_paths.end() ? -1 : it->second;
}

int AlgebraContext::h_path(int i, int a, int b, int sa, int sb) const {
    auto it = h_paths.find({i, a, sa, b, sb});
    return it == h_paths.end() ? -1 : it->second;
}

std::vector<int> AlgebraContext::arrow_basis() const {
    std::vector<int> out;
    for (size_t i = 0; i < A->dim(); ++i) {
        const std::string& lbl = A->basis(i).label;
        if (A->basis(i).radical && lbl.rfind("arrow:", 0) == 0) out.push_back((int)i);
    }
    return out;
}

AlgebraContext build_glued_context(const Field& F, const GluedSpec& spec_in) {
    GluedSpec spec = spec_in;
    for (auto& cls : spec.classes) std::sort(cls.begin(), cls.end());
    std::sort(spec.classes.begin(), spec.classes.end());
    SpecTables t = spec_tables(spec);
    validate_spec(spec, t);

    AlgebraContext ctx{F, spec.m, std::nullopt, true, nullptr, nullptr, spec.classes, t.diag, {}, {}, {}};

    // ---- H ----
    std::vector<Unit> units = h_units(t);
    auto unit_index = [&](const Unit& u) {
        auto it = std::lower_bound(units.begin(), units.end(), u);
        if (it == units.end() || !(*it == u)) return -1;
        return static_cast<int>(it - units.begin());
    };
    std::vector<std::string> hv_labels;
    for (const auto& p : t.diag) hv_labels.push_back(diagpos_str(p));
    auto hvert = [&](const DiagPos& p) {
        auto it = std::lower_bound(t.diag.begin(), t.diag.end(), p);
        return static_cast<int>(it - t.diag.begin());
    };
    std::vector<BasisElem> hbasis;
    for (const auto& u : units) {
        BasisElem b;
        b.src = hvert(u.p);
        b.tgt = hvert(u.q);
        b.idempotent = (u.p == u.q);
        b.radical = (u.p.j > u.q.j);
        bool arrow = u.p.j == u.q.j + 1;
        b.label = (b.idempotent ? "e" + diagpos_str(u.p)
                                : (arrow ? "arrow:" : "") + unit_label(u));
        hbasis.push_back(std::move(b));
    }
    std::map<std::pair<int, int>, AlgElt> htable;
    for (size_t x = 0; x < units.size(); ++x)
        for (size_t y = 0; y < units.size(); ++y) {
            if (!(units[x].q == units[y].p)) continue;
            int k = unit_index({units[x].p, units[y].q});
            if (k < 0) throw domain_error("H unit product escaped the basis");
            htable[{(int)x, (int)y}] = {{k, F.one()}};
        }
    ctx.H = std::make_unique<BasedAlgebra>(F, hv_labels, std::move(hbasis), std::move(htable));

    // ---- A ----
    std::vector<std::string> av_labels;
    for (size_t k = 0; k < spec.classes.size(); ++k) av_labels.push_back("g" + std::to_string(k));
    // basis: e_class (sum of diagonal units), then all strictly lower units
    std::vector<UnitSet> aunits;
    std::vector<BasisElem> abasis;
    for (size_t k = 0; k < spec.classes.size(); ++k) {
        UnitSet s;
        for (const auto& p : spec.classes[k]) s.push_back({p, p});
        std::sort(s.begin(), s.end());
        aunits.push_back(std::move(s));
        BasisElem b;
        b.src = b.tgt = static_cast<int>(k);
        b.idempotent = true;
        b.label = "e" + std::to_string(k);
        abasis.push_back(std::move(b));
    }
    auto cls_of = [&](const DiagPos& p) {
        for (size_t k = 0; k < spec.classes.size(); ++k)
            for (const auto& q : spec.classes[k])
                if (q == p) return static_cast<int>(k);
        throw domain_error("unclassified position");
    };
    for (const auto& u : units) {
        if (u.p.j <= u.q.j) continue; // strictly lower only
        aunits.push_back({u});
        BasisElem b;
        b.src = cls_of(u.p);
        b.tgt = cls_of(u.q);
        b.radical = true;
        b.label = (u.p.j == u.q.j + 1 ? "arrow:" : "") + unit_label(u);
        abasis.push_back(std::move(b));
    }
    auto a_express = [&](const UnitSet& s) -> AlgElt {
        if (s.empty()) return {};
        for (size_t k = 0; k < aunits.size(); ++k)
            if (aunits[k] == s) return {{(int)k, F.one()}};
        throw domain_error("A unit-set product escaped the basis");
    };
    std::map<std::pair<int, int>, AlgElt> atable;
    for (size_t x = 0; x < aunits.size(); ++x)
        for (size_t y = 0; y < aunits.size(); ++y) {
            AlgElt p = a_express(uset_mul(aunits[x], aunits[y]));
            if (!p.empty()) atable[{(int)x, (int)y}] = std::move(p);
        }
    ctx.A = std::make_unique<BasedAlgebra>(F, av_labels, std::move(abasis), std::move(atable));

    // embedding A -> H
    for (size_t k = 0; k < aunits.size(); ++k) {
        AlgElt img;
        for (const auto& u : aunits[k]) img.push_back({unit_index(u), F.one()});
        std::sort(img.begin(), img.end());
        ctx.embed.push_back(std::move(img));
    }
    // path lookups
    for (size_t k = 0; k < units.size(); ++k) {
        const Unit& u = units[k];
        if (u.p.j <= u.q.j) continue;
        ctx.h_paths[{u.p.i, u.p.j, u.p.sign, u.q.j, u.q.sign}] = static_cast<int>(k);
    }
    for (size_t k = 0; k < aunits.size(); ++k) {
        if (aunits[k].size() != 1 || aunits[k][0].p.j <= aunits[k][0].q.j) continue;
        const Unit& u = aunits[k][0];
        ctx.a_paths[{u.p.i, u.p.j, u.p.sign, u.q.j, u.q.sign}] = static_cast<int>(k);
    }
    return ctx;
}

AlgebraContext build_datum_context(const Field& F, const ValidatedDatum& d) {
    IndexSets s = build_index_sets(d);
    GluedSpec spec;
    spec.m = d.m();
    for (const auto& c : s.omega_tilde) {
        std::vector<DiagPos> cls;
        for (const auto& x : c.preds)
            cls.push_back({x.i, x.j, c.type == VertexType::Second ? c.sign : 0});
        spec.classes.push_back(std::move(cls));
    }
    AlgebraContext ctx = build_glued_context(F, spec);
    ctx.datum = d;
    ctx.gentle = d.is_gentle();
    return ctx;
}

AlgebraContext build_fat_point_context(const Field& F, int n) {
    if (n < 1) throw domain_error("fat point probe needs n >= 1");
    GluedSpec spec;
    spec.m.assign(n, 2);
    std::vector<DiagPos> all;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= 2; ++j) all.push_back({i, j, 0});
    spec.classes = {all};
    return build_glued_context(F, spec);
}

namespace {

enum Block { AA = 0, AH = 1, HA = 2, HH = 3 };

// block composition: (r, c) x (r', c') defined when c == r'
int block_row(Block b) { return b == AA || b == AH ? 0 : 1; }
int block_col(Block b) { return b == AA || b == HA ? 0 : 1; }
Block block_of(int r, int c) {
    return r == 0 ? (c == 0 ? AA : AH) : (c == 0 ? HA : HH);
}

} // namespace

ResolutionAlgebra build_resolution_algebra(const AlgebraContext& ctx) {
    const Field& F = ctx.F;
    const BasedAlgebra& A = *ctx.A;
    const BasedAlgebra& H = *ctx.H;

    // B-basis elements carried as (block, element of A or H)
    struct BElem {
        Block bl;
        int inner; // basis index in A (for AA) or H (for AH/HA/HH)
    };
    std::vector<BElem> belems;
    std::vector<BasisElem> bbasis;
    std::vector<std::string> bverts;
    std::vector<int> aa_vertex(A.num_vertices()), hh_vertex(H.num_vertices());
    for (size_t v = 0; v < A.num_vertices(); ++v) {
        aa_vertex[v] = static_cast<int>(bverts.size());
        bverts.push_back("a:" + A.vertex_label((int)v));
    }
    for (size_t v = 0; v < H.num_vertices(); ++v) {
        hh_vertex[v] = static_cast<int>(bverts.size());
        bverts.push_back("h:" + H.vertex_label((int)v));
    }

    auto push = [&](Block bl, int inner) {
        BasisElem b;
        switch (bl) {
        case AA: {
            const BasisElem& a = A.basis(inner);
            b.src = aa_vertex[a.src];
            b.tgt = aa_vertex[a.tgt];
            b.idempotent = a.idempotent;
            b.radical = a.radical;
            b.label = "AA:" + a.label;
            break;
        }
        case AH: {
            const BasisElem& h = H.basis(inner);
            b.src = aa_vertex[ctx.a_class(ctx.hpos[h.src])];
            b.tgt = hh_vertex[h.tgt];
            b.radical = true;
            b.label = "AH:" + h.label;
            break;
        }
        case HA: {
            const BasisElem& h = H.basis(inner);
            b.src = hh_vertex[h.src];
            b.tgt = aa_vertex[ctx.a_class(ctx.hpos[h.tgt])];
            b.radical = true;
            b.label = "HA:" + h.label;
            break;
        }
        case HH: {
            const BasisElem& h = H.basis(inner);
            b.src = hh_vertex[h.src];
            b.tgt = hh_vertex[h.tgt];
            b.idempotent = h.idempotent;
            b.radical = h.radical;
            b.label = "HH:" + h.label;
            break;
        }
        }
        belems.push_back({bl, inner});
        bbasis.push_back(std::move(b));
    };

    for (size_t i = 0; i < A.dim(); ++i) push(AA, (int)i);
    for (size_t i = 0; i < H.dim(); ++i) push(AH, (int)i);
    for (size_t i = 0; i < H.dim(); ++i)
        if (H.basis(i).radical) push(HA, (int)i); // the I block
    for (size_t i = 0; i < H.dim(); ++i) push(HH, (int)i);

    auto find_belem = [&](Block bl, int inner) {
        for (size_t k = 0; k < belems.size(); ++k)
            if (belems[k].bl == bl && belems[k].inner == inner) return (int)k;
        throw domain_error("B product escaped the basis");
    };

    // express an A- or H-element as a B element in the given block
    auto express = [&](Block bl, const AlgElt& x) {
        AlgElt out;
        for (const auto& [i, c] : x) out.push_back({find_belem(bl, i), c});
        std::sort(out.begin(), out.end());
        return out;
    };
    // AH * HA and HA * AH land in A resp. H through the embedding; products
    // with AA factors need A-elements moved into H first
    auto a_to_h = [&](int a_idx) { return ctx.embed[a_idx]; };
    auto h_to_a = [&](const AlgElt& h) -> AlgElt {
        // only radical elements of H come back into A (blocks AH*HA, HA*AH paths)
        AlgElt out;
        for (const auto& [i, c] : h) {
            // match the single-unit H basis element against A's radical basis
            bool found = false;
            for (size_t k = 0; k < A.dim(); ++k) {
                if (A.basis(k).idempotent) continue;
                if (ctx.embed[k].size() == 1 && ctx.embed[k][0].first == i) {
                    out.push_back({(int)k, c});
                    found = true;
                    break;
                }
            }
            if (!found) throw domain_error("H element has no A counterpart");
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::map<std::pair<int, int>, AlgElt> btable;
    for (size_t x = 0; x < belems.size(); ++x)
        for (size_t y = 0; y < belems.size(); ++y) {
            const BElem &u = belems[x], &v = belems[y];
            if (block_col(u.bl) != block_row(v.bl)) continue;
            Block rb = block_of(block_row(u.bl), block_col(v.bl));
            AlgElt prod;
            if (u.bl == AA && v.bl == AA) {
                prod = express(AA, A.mul(A.elt(u.inner, F.one()), A.elt(v.inner, F.one())));
            } else if (u.bl == AA) { // AA * AH
                prod = express(AH, H.mul(a_to_h(u.inner), H.elt(v.inner, F.one())));
            } else if (v.bl == AA) { // HA * AA
                prod = express(HA, H.mul(H.elt(u.inner, F.one()), a_to_h(v.inner)));
            } else {
                AlgElt h = H.mul(H.elt(u.inner, F.one()), H.elt(v.inner, F.one()));
                if (rb == AA) prod = express(AA, h_to_a(h));
                else prod = express(rb, h);
            }
            if (!prod.empty()) btable[{(int)x, (int)y}] = std::move(prod);
        }

    ResolutionAlgebra res;
    res.B = std::make_unique<BasedAlgebra>(F, bverts, std::move(bbasis), std::move(btable));
    res.aa_vertex = std::move(aa_vertex);
    res.hh_vertex = std::move(hh_vertex);

    if (ctx.datum) {
        const ValidatedDatum& d = *ctx.datum;
        Datum w;
        for (int mi : d.m()) w.m.push_back(2 * mi);
        // The normalization side of B carries no new gluing: a self-tie of the
        // datum survives only on the A-side slot 2j.  (The H-side idempotent
        // pair at slot 2j-1 becomes isomorphic in B, so B is non-basic for a
        // properly skew-gentle A and the witness describes its basic algebra.)
        for (const auto& rel : d.raw().relations) {
            if (rel.first == rel.second) {
                Omega x = rel.first;
                w.relations.push_back({{x.i, 2 * x.j}, {x.i, 2 * x.j}});
            } else {
                w.relations.push_back({{rel.first.i, 2 * rel.first.j},
                                       {rel.second.i, 2 * rel.second.j}});
            }
        }
        res.witness = w;
        res.witness_gentle = ValidatedDatum::validate(w).is_gentle();
    }
    return res;
}

void check_witness(const AlgebraContext& ctx, const ResolutionAlgebra& res) {
    if (!ctx.datum) throw domain_error("witness check needs a datum-built context");
    ValidatedDatum wd = ValidatedDatum::validate(res.witness);
    if (wd.is_gentle() != ctx.gentle)
        throw domain_error("witness datum gentleness disagrees with input");
    AlgebraContext wctx = build_datum_context(ctx.F, wd);
    const BasedAlgebra& B = *res.B;
    const BasedAlgebra& W = *wctx.A;

    // Vertex correspondence onto the basic algebra of B: the minus half of a
    // blown H-side pair is dropped (its projective is isomorphic to the plus
    // half).  AA vertex over {(i,j)..} -> witness class at (i,2j); HH vertex
    // at (i,j,s) -> witness class at (i,2j-1), now untied.
    std::vector<int> to_w(B.num_vertices(), -1);
    size_t kept = 0;
    for (size_t v = 0; v < ctx.A->num_vertices(); ++v) {
        DiagPos p = ctx.classes[v][0];
        to_w[res.aa_vertex[v]] = wctx.a_class({p.i, 2 * p.j, p.sign});
        ++kept;
    }
    for (size_t v = 0; v < ctx.H->num_vertices(); ++v) {
        DiagPos p = ctx.hpos[v];
        if (p.sign < 0) continue;
        to_w[res.hh_vertex[v]] = wctx.a_class({p.i, 2 * p.j - 1, 0});
        ++kept;
    }
    if (kept != W.num_vertices()) throw domain_error("witness vertex count mismatch");
    size_t bdim = 0;
    for (size_t v = 0; v < B.num_vertices(); ++v)
        for (size_t w = 0; w < B.num_vertices(); ++w) {
            if (to_w[v] < 0 || to_w[w] < 0) continue;
            size_t bh = B.hom_basis((int)v, (int)w).size();
            bdim += bh;
            if (bh != W.hom_basis(to_w[v], to_w[w]).size())
                throw domain_error("witness Hom dimension mismatch at " +
                                   B.vertex_label((int)v) + " -> " + B.vertex_label((int)w));
        }
    if (bdim != W.dim()) throw domain_error("witness dimension mismatch");
}

} // namespace gentle
