#include "suite.hpp"
#include "bunch.hpp"
#include "modules.hpp"
#include "rouquier.hpp"
#include "triples.hpp"
#include "words.hpp"
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <set>

namespace gentle {

namespace {

using clock_type = std::chrono::steady_clock;

ValidatedDatum dual_d() { return ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}}}); }
ValidatedDatum cat_d() { return ValidatedDatum::validate({{3}, {{{1, 1}, {1, 3}}}}); }
ValidatedDatum fav_d() {
    return ValidatedDatum::validate(
        {{3, 3}, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{1, 3}, {2, 3}}}});
}

BandDatum worked_band(const Field& F, int m, long pi) {
    BandDatum w;
    w.segs = {{2, 3, 2, -1, false}, {1, 2, 1, 0, false}, {2, 2, 1, 0, true}, {1, 3, 2, -1, true}};
    w.mult = m;
    w.pi = F.from_long(pi);
    return w;
}

StringDatum worked_string() {
    return {{{2, 4, 3, -1, true},
             {1, 3, 1, 0, false},
             {2, 2, 1, 0, true},
             {1, 3, 2, -1, true},
             {2, 4, 3, -2, true}}};
}

// the shared word corpus over one datum
struct Corpus {
    std::vector<StringDatum> strings;
    std::vector<BandDatum> bands; // with mult/pi filled in
    std::vector<ProjComplex> complexes;
};

Corpus build_corpus(const AlgebraContext& ctx, int max_string_segs, int wlo, int whi,
                    int max_band_segs, const std::vector<int>& mults,
                    const std::vector<long>& pis) {
    Corpus c;
    const ValidatedDatum& d = *ctx.datum;
    c.strings = enumerate_strings(d, max_string_segs, wlo, whi);
    for (const auto& v : c.strings) c.complexes.push_back(string_complex(ctx, v));
    for (const auto& skel : enumerate_bands(d, max_band_segs))
        for (int m : mults)
            for (long pi : pis) {
                BandDatum b{skel, m, ctx.F.from_long(pi)};
                c.bands.push_back(b);
                c.complexes.push_back(band_complex(ctx, b));
            }
    return c;
}

std::vector<std::multiset<int>> profile(const ProjComplex& X) {
    std::vector<std::multiset<int>> out;
    out.push_back({X.lo});
    for (const auto& c : X.comps) out.push_back({c.begin(), c.end()});
    return out;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt, std::ostream& log) {
    std::vector<CriterionResult> results;
    Field Q;

    auto run = [&](int id, const std::string& name, std::function<std::string()> body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        auto t0 = clock_type::now();
        try {
            r.detail = body();
            r.pass = true;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
        log << "criterion " << id << " [" << name << "]: " << (r.pass ? "PASS" : "FAIL") << " ("
            << std::fixed << std::setprecision(2) << r.seconds << "s)";
        if (!r.detail.empty()) log << " - " << r.detail;
        log << "\n" << std::flush;
        results.push_back(std::move(r));
    };
    auto require = [](bool cond, const std::string& msg) {
        if (!cond) throw domain_error(msg);
    };

    // contexts used throughout
    AlgebraContext dual = build_datum_context(Q, dual_d());
    AlgebraContext cat = build_datum_context(Q, cat_d());
    AlgebraContext fav = build_datum_context(Q, fav_d());
    std::vector<const AlgebraContext*> three{&dual, &cat, &fav};

    // ---- 1: golden algebra dimensions ----
    run(1, "golden algebra dimensions", [&] {
        require(dual.A->dim() == 2, "dim A(dual numbers) != 2");
        require(cat.A->dim() == 5, "dim A(one-chain datum) != 5");
        require(fav.A->dim() == 9, "dim A(three-vertex datum) != 9");
        return "dims 2, 5, 9";
    });

    // ---- 2: B gentle again and rad(B) = L ----
    run(2, "resolution algebra witness and radical", [&] {
        for (const AlgebraContext* ctx : three) {
            ResolutionAlgebra B = build_resolution_algebra(*ctx);
            require(B.witness_gentle, "witness datum is not gentle");
            check_witness(*ctx, B);
            auto rad = radical_basis(B.B->to_sca());
            size_t flagged = 0;
            for (size_t i = 0; i < B.B->dim(); ++i)
                if (B.B->basis((int)i).radical) ++flagged;
            require(rad.size() == flagged, "rad(B) dimension differs from L");
            for (const auto& v : rad)
                for (size_t i = 0; i < v.size(); ++i)
                    if (!Field::is_zero(v[i]))
                        require(B.B->basis((int)i).radical, "rad(B) escapes L");
        }
        return "three datums";
    });

    // ---- 3: gl.dim(B) = 2 ----
    run(3, "global dimension of B equals two", [&] {
        for (const AlgebraContext* ctx : three) {
            ResolutionAlgebra B = build_resolution_algebra(*ctx);
            size_t maxlen = 0;
            for (size_t c = 0; c < B.B->simple_classes().size(); ++c) {
                Resolution r = minimal_resolution(*B.B, (int)c, 5);
                require(r.terminated, "a simple B-module resolution did not terminate");
                maxlen = std::max(maxlen, r.comps.size() - 1);
            }
            require(maxlen == 2, "gl.dim(B) != 2");
        }
        return "all simples terminate at <= 2, with 2 attained";
    });

    // ---- 4: worked example complexes bit for bit ----
    run(4, "worked example complexes reproduced exactly", [&] {
        const BasedAlgebra& A = *fav.A;
        int g0 = fav.a_class({1, 1, 0}), g1 = fav.a_class({1, 2, 0}), g2 = fav.a_class({1, 3, 0});
        ProjComplex S = string_complex(fav, worked_string());
        require(S.lo == -2 && S.comps == std::vector<std::vector<int>>{{g2}, {g2, g1}, {g0}},
                "string component layout");
        require(A.is_zero(S.diffs[0].at(0, 0)) &&
                    A.eq(S.diffs[0].at(1, 0), A.elt(fav.a_path(1, 3, 2), Q.one())),
                "string first differential");
        require(A.eq(S.diffs[1].at(0, 0), A.elt(fav.a_path(1, 3, 1), Q.one())) &&
                    A.eq(S.diffs[1].at(0, 1), A.elt(fav.a_path(2, 2, 1), Q.one())),
                "string second differential");
        for (int m : {1, 2, 3}) {
            ProjComplex B = band_complex(fav, worked_band(Q, m, 2));
            require(B.comps[0] == std::vector<int>(m, g2) &&
                        B.comps[1] == std::vector<int>(2 * m, g1) &&
                        B.comps[2] == std::vector<int>(m, g0),
                    "band components");
            int dpath = fav.a_path(2, 3, 2), bpath = fav.a_path(1, 3, 2);
            int apath = fav.a_path(1, 2, 1), cpath = fav.a_path(2, 2, 1);
            for (int t = 0; t < m; ++t)
                for (int c = 0; c < m; ++c) {
                    const AlgElt &top = B.diffs[0].at(t, c), &bot = B.diffs[0].at(m + t, c);
                    const AlgElt &l = B.diffs[1].at(t, c), &rr = B.diffs[1].at(t, m + c);
                    if (t == c) {
                        require(A.eq(top, A.elt(dpath, Q.one())), "band dI block");
                        require(A.eq(bot, A.elt(bpath, Q.from_long(2))), "band bJ diagonal");
                        require(A.eq(l, A.elt(apath, Q.one())) &&
                                    A.eq(rr, A.elt(cpath, Q.one())),
                                "band (aI, cI)");
                    } else if (t == c + 1) {
                        require(A.is_zero(top) && A.eq(bot, A.elt(bpath, Q.one())),
                                "band J subdiagonal");
                    } else {
                        require(A.is_zero(top) && A.is_zero(bot) && A.is_zero(l) &&
                                    A.is_zero(rr),
                                "band zero pattern");
                    }
                }
        }
        return "string and band complexes match, m = 1, 2, 3";
    });

    // the corpora (criteria 5-7, 10)
    int max_ss = opt.small_corpus ? 4 : 5;
    int wlo = opt.small_corpus ? -3 : -4;
    int max_bs = 4;
    std::vector<int> mults = opt.small_corpus ? std::vector<int>{1} : std::vector<int>{1, 2};
    std::vector<long> pis = opt.small_corpus ? std::vector<long>{1, 2} : std::vector<long>{1, 2, 3};
    Corpus fav_corpus, dual_corpus, cat_corpus;

    // ---- 5: classification at desk scale ----
    run(5, "indecomposability and iso classes match word classes", [&] {
        fav_corpus = build_corpus(fav, max_ss, wlo, 0, max_bs, mults, pis);
        dual_corpus = build_corpus(dual, max_ss, wlo, 0, max_bs, mults, pis);
        cat_corpus = build_corpus(cat, max_ss, wlo, 0, max_bs, mults, pis);
        size_t n_checked = 0;
        for (const auto& X : fav_corpus.complexes) {
            require(decompose(X, opt.seed).size() == 1, "corpus complex decomposed");
            ++n_checked;
        }
        // same word class => isomorphic complexes
        const ValidatedDatum& d = *fav.datum;
        for (const auto& v : fav_corpus.strings) {
            StringDatum rev = reverse_string(d, v);
            require(is_homotopy_iso(string_complex(fav, v), string_complex(fav, rev), opt.seed),
                    "string not isomorphic to its reversal");
        }
        for (const auto& b : fav_corpus.bands) {
            BandDatum rot = b;
            std::rotate(rot.segs.begin(), rot.segs.begin() + 1, rot.segs.end());
            require(is_homotopy_iso(band_complex(fav, b), band_complex(fav, rot), opt.seed),
                    "band not rotation invariant");
            BandDatum rev = b;
            rev.segs.clear();
            for (auto it = b.segs.rbegin(); it != b.segs.rend(); ++it) {
                Segment s = *it;
                s.low_first = !s.low_first;
                rev.segs.push_back(s);
            }
            rev.pi = Q.inv(b.pi);
            require(is_homotopy_iso(band_complex(fav, b), band_complex(fav, rev), opt.seed),
                    "band not isomorphic to reversal with inverted eigenvalue");
        }
        // distinct word classes => non-isomorphic (profile prefilter)
        std::map<std::vector<std::multiset<int>>, std::vector<size_t>> groups;
        for (size_t k = 0; k < fav_corpus.complexes.size(); ++k)
            groups[profile(fav_corpus.complexes[k])].push_back(k);
        size_t pairs = 0;
        auto equivalent = [&](size_t x, size_t y) {
            size_t ns = fav_corpus.strings.size();
            if (x < ns && y < ns)
                return string_equivalent(d, fav_corpus.strings[x], fav_corpus.strings[y]);
            if (x >= ns && y >= ns)
                return band_equivalent(Q, d, fav_corpus.bands[x - ns], fav_corpus.bands[y - ns]);
            return false;
        };
        for (const auto& [prof, members] : groups)
            for (size_t a = 0; a < members.size(); ++a)
                for (size_t b = a + 1; b < members.size(); ++b) {
                    bool word_eq = equivalent(members[a], members[b]);
                    bool iso = is_homotopy_iso(fav_corpus.complexes[members[a]],
                                               fav_corpus.complexes[members[b]], opt.seed);
                    require(word_eq == iso, "iso classes diverge from word classes");
                    ++pairs;
                }
        return std::to_string(n_checked) + " complexes indecomposable, " +
               std::to_string(pairs) + " profile-colliding pairs compared";
    });

    // ---- 6: round trip and square invertible gluing matrices ----
    run(6, "round trip through triples and decorated matrices", [&] {
        size_t n = 0;
        for (const Corpus* c : {&fav_corpus, &dual_corpus, &cat_corpus}) {
            const AlgebraContext& ctx = c == &fav_corpus ? fav : (c == &dual_corpus ? dual : cat);
            for (const auto& X : c->complexes) {
                Triple T = triple_of(ctx, X);
                DecoratedMatrices dm = decorated_matrices(T);
                require(all_blocks_square_invertible(dm), "a gluing block is not invertible");
                require(is_homotopy_iso(reconstruct_from_decorated(dm), X, opt.seed),
                        "round trip failed");
                ++n;
            }
        }
        return std::to_string(n) + " complexes round-tripped";
    });

    // ---- 7: admissible transformations preserve the class ----
    run(7, "admissible transformations preserve the homotopy class", [&] {
        int per = opt.small_corpus ? 10 : 100;
        std::mt19937_64 rng(opt.seed);
        size_t n = 0;
        for (const Corpus* c : {&fav_corpus, &dual_corpus, &cat_corpus}) {
            const AlgebraContext& ctx = c == &fav_corpus ? fav : (c == &dual_corpus ? dual : cat);
            for (const auto& X : c->complexes) {
                DecoratedMatrices dm0 = decorated_matrices(triple_of(ctx, X));
                for (int t = 0; t < per; ++t) {
                    DecoratedMatrices dm = dm0;
                    apply_transformation(dm, random_admissible_transform(dm, rng));
                    require(all_blocks_square_invertible(dm),
                            "transformation broke invertibility");
                    require(is_homotopy_iso(reconstruct_from_decorated(dm), X, opt.seed),
                            "transformation changed the homotopy class");
                    ++n;
                }
            }
        }
        return std::to_string(n) + " transformed reconstructions";
    });

    // ---- 8: special cycles vs unbounded resolutions ----
    run(8, "special cycles match non-terminating resolutions", [&] {
        std::vector<std::vector<int>> shapes{{2}, {3}, {2, 2}, {2, 3}, {3, 2}, {3, 3}};
        size_t n_datums = 0;
        for (const auto& m : shapes) {
            // all relation sets: partial matchings on Omega without self-pairs
            std::vector<Omega> omega;
            for (int i = 1; i <= (int)m.size(); ++i)
                for (int j = 1; j <= m[i - 1]; ++j) omega.push_back({i, j});
            std::vector<std::vector<std::pair<Omega, Omega>>> matchings;
            std::function<void(size_t, std::vector<std::pair<Omega, Omega>>&,
                               std::set<size_t>&)>
                rec = [&](size_t start, std::vector<std::pair<Omega, Omega>>& cur,
                          std::set<size_t>& used) {
                    matchings.push_back(cur);
                    for (size_t a = start; a < omega.size(); ++a) {
                        if (used.count(a)) continue;
                        for (size_t b = a + 1; b < omega.size(); ++b) {
                            if (used.count(b)) continue;
                            used.insert(a);
                            used.insert(b);
                            cur.push_back({omega[a], omega[b]});
                            rec(a + 1, cur, used);
                            cur.pop_back();
                            used.erase(a);
                            used.erase(b);
                        }
                    }
                };
            std::vector<std::pair<Omega, Omega>> cur;
            std::set<size_t> used;
            rec(0, cur, used);
            for (const auto& rel : matchings) {
                ValidatedDatum d = ValidatedDatum::validate({m, rel});
                AlgebraContext ctx = build_datum_context(Q, d);
                bool has_cycle = !special_cycles(d).empty();
                int N = (int)ctx.A->num_vertices() + 3;
                bool unbounded = false;
                for (size_t c = 0; c < ctx.A->simple_classes().size(); ++c)
                    if (!minimal_resolution(*ctx.A, (int)c, N).terminated) unbounded = true;
                require(has_cycle == unbounded, "cycle criterion failed for a datum");
                ++n_datums;
            }
        }
        return std::to_string(n_datums) + " datums checked";
    });

    // ---- 9: dual-numbers completeness ----
    run(9, "dual-numbers window is exhausted by the towers", [&] {
        require(enumerate_bands(*dual.datum, 6).empty(), "bands over dual numbers");
        std::vector<StringDatum> strs = enumerate_strings(*dual.datum, 6, -3, 0);
        std::vector<ProjComplex> towers;
        for (const auto& v : strs) towers.push_back(string_complex(dual, v));
        const BasedAlgebra& A = *dual.A;
        AlgElt eps = A.elt(dual.a_path(1, 2, 1), Q.one());
        // every minimal complex on [-3, 0] with <= 2 generators per degree:
        // differentials are eps-multiples; 0/1 coefficient matrices meet every
        // iso class (interval normal forms)
        std::vector<std::vector<int>> dims;
        for (int d0 = 0; d0 <= 2; ++d0)
            for (int d1 = 0; d1 <= 2; ++d1)
                for (int d2 = 0; d2 <= 2; ++d2)
                    for (int d3 = 0; d3 <= 2; ++d3) dims.push_back({d0, d1, d2, d3});
        size_t n_complexes = 0;
        for (const auto& dd : dims) {
            size_t total_entries = 0;
            for (int k = 0; k + 1 < 4; ++k) total_entries += (size_t)dd[k] * dd[k + 1];
            // the reduced corpus trims the largest shapes
            if (opt.small_corpus && total_entries > 6) continue;
            for (size_t mask = 0; mask < (1u << total_entries); ++mask) {
                std::vector<std::vector<int>> comps;
                for (int k = 0; k < 4; ++k) comps.push_back(std::vector<int>(dd[k], 0));
                std::vector<AMat> diffs;
                size_t bit = 0;
                for (int k = 0; k + 1 < 4; ++k) {
                    AMat m(comps[k + 1], comps[k]);
                    for (int q = 0; q < dd[k + 1]; ++q)
                        for (int p = 0; p < dd[k]; ++p)
                            if (mask & (1u << bit++)) m.at(q, p) = eps;
                    diffs.push_back(std::move(m));
                }
                ProjComplex X = make_complex(A, -3, std::move(comps), std::move(diffs));
                if (X.empty()) continue;
                ++n_complexes;
                for (const auto& s : decompose(X, opt.seed)) {
                    bool matched = false;
                    for (const auto& t : towers)
                        if (is_homotopy_iso(s, t, opt.seed)) matched = true;
                    require(matched, "a summand is not a tower complex");
                }
            }
        }
        return std::to_string(n_complexes) + " complexes decomposed into towers";
    });

    // ---- 10: generation certificates ----
    run(10, "generation certificates", [&] {
        size_t n = 0;
        for (const Corpus* c : {&fav_corpus, &dual_corpus, &cat_corpus}) {
            const AlgebraContext& ctx = c == &fav_corpus ? fav : (c == &dual_corpus ? dual : cat);
            for (const auto& X : c->complexes) {
                GenerationCertificate cert = generation_certificate(ctx, X);
                require(cert.exact, "certificate sequence not exact");
                require(cert.euler_consistent, "certificate Euler mismatch");
                ++n;
            }
        }
        for (int fp = 1; fp <= 3; ++fp)
            require(fat_point_probe(Q, fp).certificate_ok, "fat point certificate failed");
        return std::to_string(n) + " certificates plus fat points 1..3";
    });

    // ---- 11: the worked bunch matrix ----
    run(11, "worked band representation over the two-chain bunch", [&] {
        BunchOfChains B = bunch_example_chains();
        FullWord w;
        w.cyclic = true;
        w.x = {"a1", "a2", "c2", "c1", "a1", "a2", "d2", "d1", "a1", "a2", "c2", "c1"};
        for (int k = 0; k < 12; ++k) w.rho.push_back(k % 2 == 0 ? '~' : '-');
        for (int m : {1, 2}) {
            RepX R = band_rep(B, w, m, Q, Q.from_long(3));
            struct Want {
                size_t row, col;
                const char* f;
                const char* e;
                bool jordan;
            };
            std::vector<Want> want = {{1, 0, "a2", "c2", false}, {1, 2, "a1", "c1", false},
                                      {3, 2, "a2", "d2", false}, {3, 4, "a1", "d1", false},
                                      {5, 4, "a2", "c2", false}, {5, 0, "a1", "c1", true}};
            require(R.entries.size() == 6, "wrong number of blocks");
            for (const auto& wt : want) {
                bool found = false;
                for (const auto& e : R.entries) {
                    if (e.row != wt.row || e.col != wt.col) continue;
                    found = true;
                    require(e.felem == wt.f && e.eelem == wt.e, "wrong generator block");
                    for (int t = 0; t < m; ++t)
                        for (int c = 0; c < m; ++c) {
                            if (t == c)
                                require(Field::eq(e.block.at(t, c),
                                                  wt.jordan ? Q.from_long(3) : Q.one()),
                                        "wrong diagonal");
                            else if (t == c + 1 && wt.jordan)
                                require(Field::eq(e.block.at(t, c), Q.one()),
                                        "wrong subdiagonal");
                            else
                                require(Field::is_zero(e.block.at(t, c)), "stray entry");
                        }
                }
                require(found, "block missing");
            }
        }
        return "block layout phi2 I, phi1 I, psi2 I, psi1 I, phi1 J, phi2 I";
    });

    return results;
}

} // namespace gentle
