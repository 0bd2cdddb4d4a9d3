#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "triples.hpp"
#include "words.hpp"

using namespace gentle;

static ValidatedDatum dual_d() { return ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}}}); }
static ValidatedDatum fav_d() {
    return ValidatedDatum::validate({{3, 3}, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{1, 3}, {2, 3}}}});
}

// Example 6.8(1): the four-segment band word
static BandDatum fav_band(int m, long pi) {
    BandDatum w;
    w.segs = {{2, 3, 2, -1, false}, {1, 2, 1, 0, false}, {2, 2, 1, 0, true}, {1, 3, 2, -1, true}};
    w.mult = m;
    w.pi = Field().from_long(pi);
    return w;
}

// Example 6.8(2): the five-segment string word
static StringDatum fav_string() {
    return {{{2, 4, 3, -1, true},
             {1, 3, 1, 0, false},
             {2, 2, 1, 0, true},
             {1, 3, 2, -1, true},
             {2, 4, 3, -2, true}}};
}

static StringDatum xn_word(const ValidatedDatum& d, int n) {
    (void)d;
    StringDatum v;
    v.segs.push_back({1, 3, 1, -n + 1, true});
    for (int k = 0; k < n - 1; ++k) v.segs.push_back({1, 2, 1, -n + 2 + k, false});
    v.segs.push_back({1, 3, 2, 0, true});
    return v;
}

TEST_CASE("validation of the worked example words") {
    auto d = fav_d();
    CHECK(validate_string(d, fav_string()) == StringType::BothStalk);
    validate_band(d, fav_band(1, 2));
    // facing ends in different degrees
    StringDatum bad = fav_string();
    bad.segs[1].r += 1;
    CHECK_THROWS_AS(validate_string(d, bad), domain_error);
    // periodic band rejected: repeat the word twice
    BandDatum per = fav_band(1, 2);
    auto segs = per.segs;
    for (auto s : segs) {
        s.r -= 2;
        per.segs.push_back(s);
    }
    // fix degrees so adjacency still holds: shift second copy by the span
    // (the doubled word is adjacency-valid only if the cycle is degree-closed,
    // which it is not here, so expect a throw either way)
    CHECK_THROWS_AS(validate_band(d, per), domain_error);
    // tied free end
    StringDatum open{{{1, 3, 1, 0, true}}};
    CHECK_THROWS_AS(validate_string(d, open), domain_error);
}

TEST_CASE("Example 6.8(2): the string complex, entry for entry") {
    auto d = fav_d();
    auto ctx = build_datum_context(Field(), d);
    ProjComplex X = string_complex(ctx, fav_string());
    int g0 = ctx.a_class({1, 1, 0}), g1 = ctx.a_class({1, 2, 0}), g2 = ctx.a_class({1, 3, 0});
    REQUIRE(X.lo == -2);
    CHECK(X.comps == std::vector<std::vector<int>>{{g2}, {g2, g1}, {g0}});
    const Field& F = ctx.F;
    const BasedAlgebra& A = *ctx.A;
    // d^{-2} = (0; b)
    CHECK(A.is_zero(X.diffs[0].at(0, 0)));
    CHECK(A.eq(X.diffs[0].at(1, 0), A.elt(ctx.a_path(1, 3, 2), F.one())));
    // d^{-1} = (ba, c)
    CHECK(A.eq(X.diffs[1].at(0, 0), A.elt(ctx.a_path(1, 3, 1), F.one())));
    CHECK(A.eq(X.diffs[1].at(0, 1), A.elt(ctx.a_path(2, 2, 1), F.one())));
    auto chk = verify_complex(X);
    CHECK(chk.is_complex);
    CHECK(chk.is_minimal);
    // cohomology totals (0, 0, 2)
    CHECK(cohomology_dims(X).totals() == std::vector<size_t>{0, 0, 2});
}

TEST_CASE("Example 6.8(1): the band complex, entry for entry") {
    auto d = fav_d();
    auto ctx = build_datum_context(Field(), d);
    const Field& F = ctx.F;
    const BasedAlgebra& A = *ctx.A;
    for (int m : {1, 2, 3}) {
        ProjComplex X = band_complex(ctx, fav_band(m, 2));
        int g0 = ctx.a_class({1, 1, 0}), g1 = ctx.a_class({1, 2, 0}), g2 = ctx.a_class({1, 3, 0});
        REQUIRE(X.lo == -2);
        CHECK(X.comps[0] == std::vector<int>(m, g2));
        CHECK(X.comps[1] == std::vector<int>(2 * m, g1));
        CHECK(X.comps[2] == std::vector<int>(m, g0));
        // d^{-2} = (d I; b J(2)), J lower-triangular
        int dpath = ctx.a_path(2, 3, 2), bpath = ctx.a_path(1, 3, 2);
        int apath = ctx.a_path(1, 2, 1), cpath = ctx.a_path(2, 2, 1);
        for (int t = 0; t < m; ++t)
            for (int c = 0; c < m; ++c) {
                const AlgElt& top = X.diffs[0].at(t, c);
                const AlgElt& bot = X.diffs[0].at(m + t, c);
                if (t == c) {
                    CHECK(A.eq(top, A.elt(dpath, F.one())));
                    CHECK(A.eq(bot, A.elt(bpath, F.from_long(2))));
                } else if (t == c + 1) {
                    CHECK(A.is_zero(top));
                    CHECK(A.eq(bot, A.elt(bpath, F.one())));
                } else {
                    CHECK(A.is_zero(top));
                    CHECK(A.is_zero(bot));
                }
                // d^{-1} = (a I, c I)
                const AlgElt& l = X.diffs[1].at(t, c);
                const AlgElt& rr = X.diffs[1].at(t, m + c);
                if (t == c) {
                    CHECK(A.eq(l, A.elt(apath, F.one())));
                    CHECK(A.eq(rr, A.elt(cpath, F.one())));
                } else {
                    CHECK(A.is_zero(l));
                    CHECK(A.is_zero(rr));
                }
            }
        CHECK(verify_complex(X).is_minimal);
    }
}

TEST_CASE("X_n words reproduce the towers") {
    auto d = dual_d();
    auto ctx = build_datum_context(Field(), d);
    const BasedAlgebra& A = *ctx.A;
    AlgElt eps = A.elt(ctx.a_path(1, 2, 1), ctx.F.one());
    for (int n : {1, 2, 4}) {
        ProjComplex X = string_complex(ctx, xn_word(d, n));
        REQUIRE(X.lo == -(n - 1));
        for (const auto& c : X.comps) CHECK(c == std::vector<int>{0});
        for (const auto& dd : X.diffs) CHECK(A.eq(dd.at(0, 0), eps));
    }
}

TEST_CASE("word equivalence: strings") {
    auto d = fav_d();
    StringDatum v = fav_string();
    CHECK(string_equivalent(d, v, reverse_string(d, v)));
    StringDatum shifted = v;
    for (auto& s : shifted.segs) s.r -= 1;
    CHECK_FALSE(string_equivalent(d, v, shifted));
}

TEST_CASE("word equivalence: bands rotate and invert") {
    auto d = fav_d();
    Field F;
    BandDatum w = fav_band(1, 2);
    BandDatum rot = w;
    std::rotate(rot.segs.begin(), rot.segs.begin() + 1, rot.segs.end());
    CHECK(band_equivalent(F, d, w, rot));
    BandDatum rev = w;
    rev.segs.clear();
    for (auto it = w.segs.rbegin(); it != w.segs.rend(); ++it) {
        Segment s = *it;
        s.low_first = !s.low_first;
        rev.segs.push_back(s);
    }
    rev.pi = F.parse_value("1/2");
    CHECK(band_equivalent(F, d, w, rev));
    rev.pi = F.from_long(2);
    CHECK_FALSE(band_equivalent(F, d, w, rev));
    BandDatum other = fav_band(1, 3);
    CHECK_FALSE(band_equivalent(F, d, w, other));
    BandDatum m2 = fav_band(2, 2);
    CHECK_FALSE(band_equivalent(F, d, w, m2));
}

TEST_CASE("band complexes: rotation and reversal invariance") {
    auto d = fav_d();
    auto ctx = build_datum_context(Field(), d);
    Field F;
    for (int m : {1, 2}) {
        BandDatum w = fav_band(m, 2);
        ProjComplex X = band_complex(ctx, w);
        for (size_t k = 1; k < 4; ++k) {
            BandDatum rot = w;
            std::rotate(rot.segs.begin(), rot.segs.begin() + k, rot.segs.end());
            CHECK(is_homotopy_iso(band_complex(ctx, rot), X));
        }
        BandDatum rev = w;
        rev.segs.clear();
        for (auto it = w.segs.rbegin(); it != w.segs.rend(); ++it) {
            Segment s = *it;
            s.low_first = !s.low_first;
            rev.segs.push_back(s);
        }
        rev.pi = F.parse_value("1/2");
        CHECK(is_homotopy_iso(band_complex(ctx, rev), X));
        rev.pi = F.from_long(3);
        CHECK_FALSE(is_homotopy_iso(band_complex(ctx, rev), X));
    }
}

TEST_CASE("enumeration over dual numbers") {
    auto d = dual_d();
    auto strings = enumerate_strings(d, 5, -3, 0);
    // towers X_1..X_4 at every placement inside the window
    CHECK(strings.size() == 10);
    CHECK(enumerate_bands(d, 6).empty());
}

TEST_CASE("enumeration over a hereditary datum") {
    auto d = ValidatedDatum::validate({{3}, {}});
    auto strings = enumerate_strings(d, 2, -1, 0);
    for (const auto& v : strings) CHECK(v.segs.size() == 1);
    CHECK(enumerate_bands(d, 4).empty());
}

TEST_CASE("enumeration over the three-vertex datum finds the worked band") {
    auto d = fav_d();
    auto bands = enumerate_bands(d, 4);
    CHECK(!bands.empty());
    Field F;
    bool found = false;
    for (const auto& skel : bands) {
        BandDatum b{skel, 1, F.one()};
        BandDatum target = fav_band(1, 1);
        if (band_equivalent(F, d, b, target)) found = true;
    }
    CHECK(found);
    auto strings = enumerate_strings(d, 2, -1, 0);
    CHECK(!strings.empty());
    for (const auto& v : strings) validate_string(d, v);
}

TEST_CASE("truncated infinite string over dual numbers") {
    auto d = dual_d();
    auto ctx = build_datum_context(Field(), d);
    auto cycles = special_cycles(d);
    REQUIRE(cycles.size() == 1);
    StringDatum seed{{{1, 3, 2, 0, true}}};
    auto t = truncated_infinite_string(ctx, seed, cycles[0], -5, 0);
    CHECK(t.cut);
    REQUIRE(t.complex.lo == -5);
    // X_6 shape: one A per degree, eps differentials
    for (const auto& c : t.complex.comps) CHECK(c.size() == 1);
    auto h = cohomology_dims(t.complex).totals();
    for (size_t k = 1; k + 1 < h.size(); ++k) CHECK(h[k] == 0);
    CHECK(h.back() == 1);
}

TEST_CASE("projective resolutions as complexes") {
    Field Q;
    auto fav = build_datum_context(Q, fav_d());
    for (size_t c = 0; c < fav.A->simple_classes().size(); ++c) {
        auto r = projective_resolution(*fav.A, (int)c, 5);
        CHECK(r.terminated);
        CHECK(r.length <= 2);
        CHECK(verify_complex(r.complex).is_minimal);
    }
    auto dual = build_datum_context(Q, dual_d());
    auto r = projective_resolution(*dual.A, 0, 5);
    CHECK_FALSE(r.terminated);
}

TEST_CASE("band equivalence is an equivalence relation on the enumerated corpus") {
    auto d = fav_d();
    Field F;
    std::vector<BandDatum> corpus;
    for (const auto& skel : enumerate_bands(d, 4))
        for (long pi : {1L, 2L}) corpus.push_back({skel, 1, F.from_long(pi)});
    for (const auto& a : corpus) CHECK(band_equivalent(F, d, a, a));
    for (size_t i = 0; i < corpus.size(); ++i)
        for (size_t j = i; j < corpus.size(); ++j) {
            bool ij = band_equivalent(F, d, corpus[i], corpus[j]);
            bool ji = band_equivalent(F, d, corpus[j], corpus[i]);
            CHECK(ij == ji);
            if (!ij) continue;
            for (size_t k = 0; k < corpus.size(); ++k)
                if (band_equivalent(F, d, corpus[j], corpus[k]))
                    CHECK(band_equivalent(F, d, corpus[i], corpus[k]));
        }
}

TEST_CASE("every enumerated complex is a minimal complex") {
    Field Q;
    auto ctx = build_datum_context(Q, fav_d());
    for (const auto& v : enumerate_strings(fav_d(), 4, -2, 0)) {
        auto c = verify_complex(string_complex(ctx, v));
        CHECK(c.is_complex);
        CHECK(c.is_minimal);
    }
    for (const auto& skel : enumerate_bands(fav_d(), 4)) {
        BandDatum b{skel, 2, Q.from_long(2)};
        auto c = verify_complex(band_complex(ctx, b));
        CHECK(c.is_complex);
        CHECK(c.is_minimal);
    }
}

TEST_CASE("seed incompatible with the cycle is rejected") {
    auto d = dual_d();
    auto ctx = build_datum_context(Field(), d);
    auto cycles = special_cycles(d);
    // a seed whose trailing end is untied cannot continue
    auto hered = ValidatedDatum::validate({{3}, {}});
    auto hctx = build_datum_context(Field(), hered);
    StringDatum seed{{{1, 3, 2, 0, true}}};
    CHECK_THROWS_AS(truncated_infinite_string(hctx, seed, cycles[0], -3, 0), domain_error);
}

TEST_CASE("the word machinery works over a prime field") {
    Field F(101);
    auto ctx = build_datum_context(F, fav_d());
    BandDatum w;
    w.segs = {{2, 3, 2, -1, false}, {1, 2, 1, 0, false}, {2, 2, 1, 0, true}, {1, 3, 2, -1, true}};
    w.mult = 2;
    w.pi = F.from_long(5);
    ProjComplex X = band_complex(ctx, w);
    CHECK(verify_complex(X).is_minimal);
    CHECK(decompose(X).size() == 1);
    // reversal needs the inverse eigenvalue here too
    BandDatum rev = w;
    rev.segs.clear();
    for (auto it = w.segs.rbegin(); it != w.segs.rend(); ++it) {
        Segment s = *it;
        s.low_first = !s.low_first;
        rev.segs.push_back(s);
    }
    rev.pi = F.inv(w.pi);
    CHECK(is_homotopy_iso(band_complex(ctx, rev), X));
    rev.pi = F.from_long(7);
    CHECK_FALSE(is_homotopy_iso(band_complex(ctx, rev), X));
}
