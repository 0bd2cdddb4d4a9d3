#include "words.hpp"
#include <algorithm>
#include <set>

namespace gentle {

bool is_stalk(const ValidatedDatum& d, const Segment& s) {
    return s.a == d.m()[s.i - 1] + 1;
}

static void check_segment(const ValidatedDatum& d, const Segment& s) {
    if (s.i < 1 || s.i > d.t()) throw domain_error("segment chain out of range");
    int m = d.m()[s.i - 1];
    if (s.a < 2 || s.a > m + 1 || s.b < 1 || s.b >= s.a)
        throw domain_error("segment levels out of range");
}

WordEnd entry_end(const ValidatedDatum& d, const Segment& s) {
    if (is_stalk(d, s) || s.low_first) return {{s.i, s.b}, s.r};
    return {{s.i, s.a}, s.r - 1};
}

WordEnd exit_end(const ValidatedDatum& d, const Segment& s) {
    if (is_stalk(d, s) || !s.low_first) return {{s.i, s.b}, s.r};
    return {{s.i, s.a}, s.r - 1};
}

namespace {

void check_adjacency(const ValidatedDatum& d, const Segment& s1, const Segment& s2) {
    WordEnd e = exit_end(d, s1), f = entry_end(d, s2);
    if (e.r != f.r) throw domain_error("facing segment ends in different degrees");
    auto p = d.partner(e.om);
    if (!p) throw domain_error("facing end " + omega_str(e.om) + " is untied");
    if (*p == e.om) throw domain_error("self-tied facing end (skew datum)");
    if (*p != f.om)
        throw domain_error("facing ends " + omega_str(e.om) + ", " + omega_str(f.om) +
                           " are not tied");
}

void check_free_end(const ValidatedDatum& d, const WordEnd& e, bool stalk) {
    if (stalk) {
        if (d.is_tied(e.om))
            throw domain_error("stalk end " + omega_str(e.om) +
                               " is tied and must continue through the tie");
        return;
    }
    if (d.is_tied(e.om))
        throw domain_error("free end " + omega_str(e.om) + " must be untied");
}

} // namespace

StringType validate_string(const ValidatedDatum& d, const StringDatum& v) {
    if (v.segs.empty()) throw domain_error("empty string datum");
    for (const auto& s : v.segs) check_segment(d, s);
    for (size_t k = 0; k + 1 < v.segs.size(); ++k) {
        if (is_stalk(d, v.segs[k]) && k != 0)
            throw domain_error("stalk segment in the interior of a string");
        check_adjacency(d, v.segs[k], v.segs[k + 1]);
    }
    bool lstalk = is_stalk(d, v.segs.front());
    bool rstalk = is_stalk(d, v.segs.back());
    if (v.segs.size() == 1) {
        const Segment& s = v.segs[0];
        if (is_stalk(d, s)) {
            check_free_end(d, entry_end(d, s), true);
            return StringType::BothStalk; // degenerate single stalk
        }
        check_free_end(d, entry_end(d, s), false);
        check_free_end(d, exit_end(d, s), false);
        return StringType::BothUntied;
    }
    if (!lstalk) check_free_end(d, entry_end(d, v.segs.front()), false);
    if (!rstalk) check_free_end(d, exit_end(d, v.segs.back()), false);
    if (lstalk && rstalk) return StringType::BothStalk;
    if (lstalk) return StringType::LeftStalk;
    if (rstalk) return StringType::RightStalk;
    return StringType::BothUntied;
}

void validate_band(const ValidatedDatum& d, const BandDatum& w) {
    if (w.segs.empty()) throw domain_error("empty band datum");
    if (w.mult < 1) throw domain_error("band multiplicity must be >= 1");
    for (const auto& s : w.segs) {
        check_segment(d, s);
        if (is_stalk(d, s)) throw domain_error("band datum contains a stalk segment");
    }
    size_t n = w.segs.size();
    for (size_t k = 0; k < n; ++k) check_adjacency(d, w.segs[k], w.segs[(k + 1) % n]);
    // non-periodic
    for (size_t k = 1; k < n; ++k) {
        bool same = true;
        for (size_t t = 0; t < n && same; ++t) same = w.segs[(t + k) % n] == w.segs[t];
        if (same) throw domain_error("periodic band word");
    }
}

StringDatum reverse_string(const ValidatedDatum& d, const StringDatum& v) {
    StringDatum r;
    for (auto it = v.segs.rbegin(); it != v.segs.rend(); ++it) {
        Segment s = *it;
        if (!is_stalk(d, s)) s.low_first = !s.low_first;
        r.segs.push_back(s);
    }
    return r;
}

bool string_equivalent(const ValidatedDatum& d, const StringDatum& a, const StringDatum& b) {
    return a.segs == b.segs || reverse_string(d, a).segs == b.segs;
}

namespace {

std::vector<Segment> rotate(const std::vector<Segment>& w, size_t k) {
    std::vector<Segment> r;
    size_t n = w.size();
    for (size_t t = 0; t < n; ++t) r.push_back(w[(t + k) % n]);
    return r;
}

std::vector<Segment> reverse_cyclic(const ValidatedDatum& d, const std::vector<Segment>& w) {
    std::vector<Segment> r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        Segment s = *it;
        if (!is_stalk(d, s)) s.low_first = !s.low_first;
        r.push_back(s);
    }
    return r;
}

} // namespace

bool band_equivalent(const Field& F, const ValidatedDatum& d, const BandDatum& a,
                     const BandDatum& b) {
    if (a.mult != b.mult) return false;
    size_t n = a.segs.size();
    if (n != b.segs.size()) return false;
    for (size_t k = 0; k < n; ++k)
        if (rotate(a.segs, k) == b.segs && Field::eq(a.pi, b.pi)) return true;
    auto rev = reverse_cyclic(d, a.segs);
    FVal pinv = F.inv(a.pi);
    for (size_t k = 0; k < n; ++k)
        if (rotate(rev, k) == b.segs && Field::eq(pinv, b.pi)) return true;
    return false;
}

namespace {

GluingDiagram build_gluing(const ValidatedDatum& d, const std::vector<Segment>& segs,
                           bool cyclic, int mult) {
    GluingDiagram g;
    g.mult = mult;
    std::vector<std::pair<int, int>> node_of(segs.size(), {-1, -1}); // (low node, high node)
    for (size_t k = 0; k < segs.size(); ++k) {
        const Segment& s = segs[k];
        int low = (int)g.nodes.size();
        g.nodes.push_back({(int)k, 0, {s.i, s.b}, s.r});
        int high = -1;
        if (!is_stalk(d, s)) {
            high = (int)g.nodes.size();
            g.nodes.push_back({(int)k, 1, {s.i, s.a}, s.r - 1});
            g.solid.push_back({(size_t)high, (size_t)low});
        }
        node_of[k] = {low, high};
    }
    auto node_at = [&](size_t k, const WordEnd& e) -> size_t {
        const Segment& s = segs[k];
        if (!is_stalk(d, s) && e.om == Omega{s.i, s.a} && e.r == s.r - 1)
            return node_of[k].second;
        return node_of[k].first;
    };
    size_t npair = cyclic ? segs.size() : segs.size() - 1;
    for (size_t k = 0; k < npair; ++k) {
        size_t k2 = (k + 1) % segs.size();
        g.dotted.push_back(
            {node_at(k, exit_end(d, segs[k])), node_at(k2, entry_end(d, segs[k2]))});
    }
    return g;
}

ProjComplex complex_of_gluing(const AlgebraContext& ctx, const ValidatedDatum& d,
                              const std::vector<Segment>& segs, bool cyclic, int mult,
                              const FVal& pi, bool allow_dangling) {
    const BasedAlgebra& A = *ctx.A;
    const Field& F = ctx.F;
    GluingDiagram g = build_gluing(d, segs, cyclic, mult);
    // merge dotted-paired nodes into A-projectives
    std::vector<int> group(g.nodes.size(), -1);
    std::vector<std::vector<size_t>> members;
    for (auto [x, y] : g.dotted) {
        if (group[x] >= 0 || group[y] >= 0) throw domain_error("node tied twice");
        group[x] = group[y] = (int)members.size();
        members.push_back({x, y});
    }
    for (size_t n = 0; n < g.nodes.size(); ++n)
        if (group[n] < 0) {
            group[n] = (int)members.size();
            members.push_back({n});
        }
    // groups must sit in one degree and one vertex class
    struct GroupInfo {
        int degree = 0, cls = -1;
        std::pair<int, int> key; // (min segment, end rank) for ordering
    };
    std::vector<GroupInfo> ginfo(members.size());
    for (size_t gi = 0; gi < members.size(); ++gi) {
        int deg = g.nodes[members[gi][0]].r;
        for (size_t n : members[gi])
            if (g.nodes[n].r != deg) throw domain_error("tied occurrences in different degrees");
        ginfo[gi].degree = deg;
        if (members[gi].size() == 2) {
            Omega x = g.nodes[members[gi][0]].om, y = g.nodes[members[gi][1]].om;
            auto p = d.partner(x);
            if (!p || *p != y) throw domain_error("merged pair not tied");
            ginfo[gi].cls = ctx.a_class({x.i, x.j, 0});
        } else {
            Omega x = g.nodes[members[gi][0]].om;
            if (d.is_tied(x) && !allow_dangling)
                throw domain_error("unmerged tied occurrence " + omega_str(x));
            ginfo[gi].cls = ctx.a_class({x.i, x.j, 0});
        }
        std::pair<int, int> key{INT32_MAX, INT32_MAX};
        for (size_t n : members[gi]) {
            const Segment& s = segs[g.nodes[n].seg];
            int entry_code = (is_stalk(d, s) || s.low_first) ? 0 : 1;
            int rank = g.nodes[n].end == entry_code ? 0 : 1;
            key = std::min(key, {g.nodes[n].seg, rank});
        }
        ginfo[gi].key = key;
    }
    // degrees and per-degree group order
    int lo = ginfo.empty() ? 0 : ginfo[0].degree, hi = lo;
    for (const auto& gi : ginfo) {
        lo = std::min(lo, gi.degree);
        hi = std::max(hi, gi.degree);
    }
    int nd = ginfo.empty() ? 0 : hi - lo + 1;
    std::vector<std::vector<size_t>> order(nd);
    for (size_t gi = 0; gi < members.size(); ++gi) order[ginfo[gi].degree - lo].push_back(gi);
    for (auto& v : order)
        std::sort(v.begin(), v.end(),
                  [&](size_t x, size_t y) { return ginfo[x].key < ginfo[y].key; });
    // components: groups x multiplicity (copies adjacent, group-major)
    std::vector<std::vector<int>> comps(nd);
    std::vector<std::map<size_t, size_t>> gstart(nd);
    for (int k = 0; k < nd; ++k)
        for (size_t gi : order[k]) {
            gstart[k][gi] = comps[k].size();
            for (int c = 0; c < mult; ++c) comps[k].push_back(ginfo[gi].cls);
        }
    std::vector<AMat> diffs;
    for (int k = 0; k + 1 < nd; ++k) diffs.push_back(AMat(comps[k + 1], comps[k]));
    // one block per two-term segment; the last segment of a band carries the
    // Jordan block J_m(pi), everything else the identity
    for (size_t k = 0; k < segs.size(); ++k) {
        const Segment& s = segs[k];
        if (is_stalk(d, s)) continue;
        // nodes: high at degree r-1 (source), low at degree r (target)
        size_t high_node = 0, low_node = 0;
        for (size_t n = 0; n < g.nodes.size(); ++n) {
            if (g.nodes[n].seg != (int)k) continue;
            (g.nodes[n].end == 1 ? high_node : low_node) = n;
        }
        int kdeg = s.r - 1 - lo;
        size_t src = gstart[kdeg][(size_t)group[high_node]];
        size_t tgt = gstart[kdeg + 1][(size_t)group[low_node]];
        bool jordan = cyclic && k + 1 == segs.size();
        // The closing block must track the traversal direction of its
        // segment, otherwise rotating the word swaps pi and pi^{-1}: a
        // low-first closing segment carries J_m(pi), a high-first one the
        // conjugate of its inverse, J_m(pi^{-1}).
        FVal eig = (jordan && !s.low_first) ? F.inv(pi) : pi;
        int pidx = ctx.a_path(s.i, s.a, s.b);
        if (pidx < 0) throw domain_error("missing path for segment differential");
        for (int t = 0; t < mult; ++t)
            for (int c = 0; c < mult; ++c) {
                FVal coeff = F.zero();
                if (!jordan) {
                    if (t == c) coeff = F.one();
                } else {
                    if (t == c) coeff = eig;
                    else if (t == c + 1) coeff = F.one();
                }
                if (Field::is_zero(coeff)) continue;
                AMat& dmat = diffs[kdeg];
                dmat.at(tgt + t, src + c) = A.add(dmat.at(tgt + t, src + c), A.elt(pidx, coeff));
            }
    }
    return make_complex(A, lo, std::move(comps), std::move(diffs));
}

} // namespace

GluingDiagram string_gluing(const ValidatedDatum& d, const StringDatum& v) {
    validate_string(d, v);
    return build_gluing(d, v.segs, false, 1);
}

GluingDiagram band_gluing(const ValidatedDatum& d, const BandDatum& w) {
    validate_band(d, w);
    return build_gluing(d, w.segs, true, w.mult);
}

ProjComplex string_complex(const AlgebraContext& ctx, const StringDatum& v) {
    if (!ctx.datum) throw domain_error("string_complex needs a datum context");
    const ValidatedDatum& d = *ctx.datum;
    if (!d.is_gentle()) throw domain_error("string complexes need a gentle datum");
    validate_string(d, v);
    return complex_of_gluing(ctx, d, v.segs, false, 1, ctx.F.one(), false);
}

ProjComplex band_complex(const AlgebraContext& ctx, const BandDatum& w) {
    if (!ctx.datum) throw domain_error("band_complex needs a datum context");
    const ValidatedDatum& d = *ctx.datum;
    if (!d.is_gentle()) throw domain_error("band complexes need a gentle datum");
    validate_band(d, w);
    if (Field::is_zero(w.pi)) throw domain_error("band eigenvalue must be nonzero");
    return complex_of_gluing(ctx, d, w.segs, true, w.mult, w.pi, false);
}

namespace {

std::vector<std::array<int, 5>> encode(const std::vector<Segment>& segs) {
    std::vector<std::array<int, 5>> e;
    for (const auto& s : segs) e.push_back({s.i, s.a, s.b, s.r, s.low_first ? 1 : 0});
    return e;
}

// candidate continuations entering at (om, r)
std::vector<Segment> entering_segments(const ValidatedDatum& d, const Omega& om, int r,
                                       int wlo, int whi, bool allow_stalk) {
    std::vector<Segment> out;
    int m = d.m()[om.i - 1];
    // enter at the low end: (i, a, om.j, r), high end in degree r-1
    if (r - 1 >= wlo)
        for (int a = om.j + 1; a <= m; ++a) out.push_back({om.i, a, om.j, r, true});
    if (allow_stalk) out.push_back({om.i, m + 1, om.j, r, true});
    // enter at the high end: (i, om.j, b, r+1), low end in degree r+1
    if (r + 1 <= whi)
        for (int b = 1; b < om.j; ++b) out.push_back({om.i, om.j, b, r + 1, false});
    return out;
}

} // namespace

std::vector<StringDatum> enumerate_strings(const ValidatedDatum& d, int max_segments,
                                           int window_lo, int window_hi) {
    if (!d.is_gentle()) throw domain_error("enumeration needs a gentle datum");
    std::set<std::vector<std::array<int, 5>>> seen;
    std::vector<StringDatum> out;
    auto emit = [&](const std::vector<Segment>& segs) {
        StringDatum v{segs};
        auto enc = encode(segs);
        auto renc = encode(reverse_string(d, v).segs);
        if (seen.count(std::min(enc, renc))) return;
        seen.insert(std::min(enc, renc));
        validate_string(d, v);
        out.push_back(std::move(v));
    };
    // starts: every segment placed in the window whose entry end is free
    std::vector<Segment> starts;
    for (int i = 1; i <= d.t(); ++i) {
        int m = d.m()[i - 1];
        for (int r = window_lo; r <= window_hi; ++r) {
            for (int b = 1; b <= m; ++b) starts.push_back({i, m + 1, b, r, true}); // stalks
            if (r - 1 >= window_lo)
                for (int a = 2; a <= m; ++a)
                    for (int b = 1; b < a; ++b) {
                        starts.push_back({i, a, b, r, true});
                        starts.push_back({i, a, b, r, false});
                    }
        }
    }
    std::function<void(std::vector<Segment>&)> extend = [&](std::vector<Segment>& word) {
        const Segment& last = word.back();
        if (is_stalk(d, last) && word.size() > 1) {
            emit(word); // stalks close a word
            return;
        }
        WordEnd e = exit_end(d, last);
        auto p = d.partner(e.om);
        if (!p) {
            emit(word); // untied free end
            return;
        }
        if ((int)word.size() >= max_segments) return;
        for (const Segment& nxt :
             entering_segments(d, *p, e.r, window_lo, window_hi, true)) {
            word.push_back(nxt);
            extend(word);
            word.pop_back();
        }
    };
    for (const Segment& s : starts) {
        // the entry end of the first segment must be free (untied) unless the
        // segment is a stalk (whose single end faces inward)
        if (!is_stalk(d, s) && d.is_tied(entry_end(d, s).om)) continue;
        std::vector<Segment> word{s};
        if (is_stalk(d, s)) {
            WordEnd e = exit_end(d, s);
            auto p = d.partner(e.om);
            if (!p) {
                emit(word);
                continue;
            }
            if (max_segments < 2) continue;
            for (const Segment& nxt :
                 entering_segments(d, *p, e.r, window_lo, window_hi, true)) {
                word.push_back(nxt);
                extend(word);
                word.pop_back();
            }
        } else {
            extend(word);
        }
    }
    return out;
}

std::vector<std::vector<Segment>> enumerate_bands(const ValidatedDatum& d, int max_segments) {
    if (!d.is_gentle()) throw domain_error("enumeration needs a gentle datum");
    std::set<std::vector<std::array<int, 5>>> seen;
    std::vector<std::vector<Segment>> out;
    auto canonical = [&](const std::vector<Segment>& w) {
        std::vector<std::array<int, 5>> best;
        bool first = true;
        for (const auto& cand : {w, reverse_cyclic(d, w)})
            for (size_t k = 0; k < w.size(); ++k) {
                auto e = encode(rotate(cand, k));
                if (first || e < best) {
                    best = e;
                    first = false;
                }
            }
        return best;
    };
    auto emit = [&](const std::vector<Segment>& w) {
        BandDatum bd{w, 1, Field().one()};
        validate_band(d, bd);
        auto c = canonical(w);
        if (seen.count(c)) return;
        seen.insert(c);
        out.push_back(w);
    };
    // degrees are normalized afterwards: explore with r in a window wide
    // enough for max_segments steps, then shift so the top degree is 0
    int wlo = -max_segments - 1, whi = max_segments + 1;
    std::vector<Segment> starts;
    for (int i = 1; i <= d.t(); ++i)
        for (int a = 2; a <= d.m()[i - 1]; ++a)
            for (int b = 1; b < a; ++b) starts.push_back({i, a, b, 0, true});
    std::function<void(std::vector<Segment>&)> extend = [&](std::vector<Segment>& word) {
        // try to close the cycle
        WordEnd e = exit_end(d, word.back());
        auto p = d.partner(e.om);
        if (!p) return;
        WordEnd f = entry_end(d, word[0]);
        if (*p == f.om && e.r == f.r) {
            // normalize degrees: maximal occupied degree becomes 0
            int top = word[0].r;
            for (const auto& s : word) top = std::max(top, s.r);
            std::vector<Segment> norm = word;
            for (auto& s : norm) s.r -= top;
            bool periodic = false;
            for (size_t k = 1; k < norm.size() && !periodic; ++k)
                periodic = rotate(norm, k) == norm;
            if (!periodic) emit(norm);
        }
        if ((int)word.size() >= max_segments) return;
        for (const Segment& nxt : entering_segments(d, *p, e.r, wlo, whi, false)) {
            word.push_back(nxt);
            extend(word);
            word.pop_back();
        }
    };
    for (const Segment& s : starts) {
        std::vector<Segment> word{s};
        extend(word);
    }
    return out;
}

TruncatedString truncated_infinite_string(const AlgebraContext& ctx, const StringDatum& seed,
                                          const std::vector<Omega>& cycle, int window_lo,
                                          int window_hi) {
    if (!ctx.datum) throw domain_error("needs a datum context");
    const ValidatedDatum& d = *ctx.datum;
    if (cycle.empty()) throw domain_error("empty special cycle");
    for (const auto& s : seed.segs) {
        check_segment(d, s);
        if (s.r > window_hi || (is_stalk(d, s) ? s.r : s.r - 1) < window_lo)
            throw domain_error("seed leaves the degree window");
    }
    for (size_t k = 0; k + 1 < seed.segs.size(); ++k)
        check_adjacency(d, seed.segs[k], seed.segs[k + 1]);
    // the trailing end continues along the cycle
    WordEnd e = exit_end(d, seed.segs.back());
    auto p = d.partner(e.om);
    if (!p) throw domain_error("seed end is untied; nothing to continue");
    size_t pos = cycle.size();
    for (size_t k = 0; k < cycle.size(); ++k)
        if (cycle[k] == *p) pos = k;
    if (pos == cycle.size()) throw domain_error("seed does not continue into the cycle");
    std::vector<Segment> segs = seed.segs;
    bool cut = false;
    for (;;) {
        Omega cur = cycle[pos];
        int r = e.r;
        if (r - 1 < window_lo) {
            cut = true;
            break;
        }
        Segment nxt{cur.i, cur.j + 1, cur.j, r, true};
        check_segment(d, nxt);
        segs.push_back(nxt);
        e = exit_end(d, nxt);
        auto q = d.partner(e.om);
        if (!q) throw domain_error("special cycle broke off");
        pos = (pos + 1) % cycle.size();
        if (cycle[pos] != *q) throw domain_error("cycle step mismatch");
    }
    ProjComplex X = complex_of_gluing(ctx, d, segs, false, 1, ctx.F.one(), true);
    return {std::move(X), cut};
}

ResolutionComplex projective_resolution(const BasedAlgebra& A, int cls, int N) {
    Resolution r = minimal_resolution(A, cls, N);
    ResolutionComplex out;
    out.terminated = r.terminated;
    out.length = r.comps.size() - 1;
    // degrees -len .. 0
    int len = (int)r.comps.size() - 1;
    std::vector<std::vector<int>> comps;
    std::vector<AMat> diffs;
    for (int k = len; k >= 0; --k) comps.push_back(r.comps[k]);
    for (int k = len - 1; k >= 0; --k) diffs.push_back(r.diffs[k]);
    out.complex = make_complex(A, -len, std::move(comps), std::move(diffs));
    return out;
}

} // namespace gentle
