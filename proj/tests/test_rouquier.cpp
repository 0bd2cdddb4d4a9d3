#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rouquier.hpp"
#include "words.hpp"

using namespace gentle;

static ValidatedDatum dual_d() { return ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}}}); }
static ValidatedDatum cat_d() { return ValidatedDatum::validate({{3}, {{{1, 1}, {1, 3}}}}); }
static ValidatedDatum fav_d() {
    return ValidatedDatum::validate({{3, 3}, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{1, 3}, {2, 3}}}});
}

static ProjComplex Xn(const AlgebraContext& ctx, int n) {
    const BasedAlgebra& A = *ctx.A;
    AlgElt eps = A.elt(ctx.a_path(1, 2, 1), A.field().one());
    std::vector<std::vector<int>> comps(n, {0});
    std::vector<AMat> diffs;
    for (int k = 0; k + 1 < n; ++k) {
        AMat d({0}, {0});
        d.at(0, 0) = eps;
        diffs.push_back(std::move(d));
    }
    return make_complex(A, -(n - 1), std::move(comps), std::move(diffs));
}

TEST_CASE("generator sizes and dims") {
    Field Q;
    auto d = build_datum_context(Q, dual_d());
    auto Z = build_generator(d);
    REQUIRE(Z.members.size() == 3);
    std::vector<size_t> dims;
    for (const auto& m : Z.members) dims.push_back(m.dim());
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<size_t>{1, 1, 2});

    auto c = build_datum_context(Q, cat_d());
    auto Zc = build_generator(c);
    CHECK(Zc.members.size() == 6);
    size_t count3 = 0;
    for (const auto& m : Zc.members) count3 += m.dim() == 3;
    CHECK(count3 == 1);
    // member count formula
    for (const auto& vd : {dual_d(), cat_d(), fav_d()}) {
        auto ctx = build_datum_context(Q, vd);
        size_t want = 0;
        for (int mi : ctx.m) want += (size_t)mi * (mi + 1) / 2;
        CHECK(build_generator(ctx).members.size() == want);
    }
}

TEST_CASE("certificates on the dual-numbers towers") {
    Field Q;
    auto ctx = build_datum_context(Q, dual_d());
    for (int n : {1, 2, 3, 5}) {
        auto cert = generation_certificate(ctx, Xn(ctx, n));
        CHECK(cert.exact);
        CHECK(cert.euler_consistent);
        // n copies of the length-one member types appear on the right
        size_t rcount = 0;
        for (const auto& [k, m] : cert.right) rcount += m;
        CHECK(rcount >= (size_t)n);
    }
}

TEST_CASE("certificate on stalks is trivially exact") {
    Field Q;
    auto ctx = build_datum_context(Q, fav_d());
    for (size_t v = 0; v < ctx.A->num_vertices(); ++v) {
        auto cert = generation_certificate(ctx, stalk_complex(*ctx.A, (int)v, 0));
        CHECK(cert.exact);
        CHECK(cert.euler_consistent);
    }
}

TEST_CASE("certificate on the worked band complex") {
    Field Q;
    auto ctx = build_datum_context(Q, fav_d());
    BandDatum w;
    w.segs = {{2, 3, 2, -1, false}, {1, 2, 1, 0, false}, {2, 2, 1, 0, true}, {1, 3, 2, -1, true}};
    w.mult = 1;
    w.pi = Q.from_long(2);
    auto cert = generation_certificate(ctx, band_complex(ctx, w));
    CHECK(cert.exact);
    CHECK(cert.euler_consistent);
}

TEST_CASE("fat point probes") {
    Field Q;
    auto r1 = fat_point_probe(Q, 1);
    CHECK(r1.dimA == 2);
    CHECK(r1.dimH == 3);
    CHECK(r1.certificate_ok);
    auto r2 = fat_point_probe(Q, 2);
    CHECK(r2.dimA == 3);
    CHECK(r2.certificate_ok);
    auto r3 = fat_point_probe(Q, 3);
    CHECK(r3.dimA == 4);
    CHECK(r3.certificate_ok);
}
