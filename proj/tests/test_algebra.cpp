#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algebra.hpp"
#include "modules.hpp"

using namespace gentle;

static ValidatedDatum dual() { return ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}}}); }
static ValidatedDatum cat_o() { return ValidatedDatum::validate({{3}, {{{1, 1}, {1, 3}}}}); }
static ValidatedDatum favourite() {
    return ValidatedDatum::validate({{3, 3}, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{1, 3}, {2, 3}}}});
}
static ValidatedDatum tubular_degen() {
    return ValidatedDatum::validate(
        {{3, 3}, {{{1, 1}, {2, 1}}, {{1, 3}, {2, 3}}, {{1, 2}, {1, 2}}, {{2, 2}, {2, 2}}}});
}

TEST_CASE("algebra dimensions") {
    Field Q;
    auto d = build_datum_context(Q, dual());
    CHECK(d.A->dim() == 2);
    CHECK(d.H->dim() == 3);
    CHECK(d.dim_I() == 1);

    auto c = build_datum_context(Q, cat_o());
    CHECK(c.A->dim() == 5);
    CHECK(c.H->dim() == 6);

    auto f = build_datum_context(Q, favourite());
    CHECK(f.A->dim() == 9);
    CHECK(f.H->dim() == 12);
    CHECK(f.dim_I() == 6);

    // blown-up normalization: dim T_{3,{2}} = 11 per the 4x4 shape with a
    // full 2x2 middle block, hence dim H = 22 for the skew datum
    auto s = build_datum_context(Q, tubular_degen());
    CHECK(s.H->dim() == 22);
    CHECK(s.A->dim() == 16);
    CHECK(s.A->num_vertices() == 6);
}

TEST_CASE("radical agrees with the trace-form radical") {
    Field Q;
    for (const auto& vd : {dual(), cat_o(), favourite(), tubular_degen()}) {
        auto ctx = build_datum_context(Q, vd);
        auto rad = radical_basis(ctx.A->to_sca());
        size_t flagged = 0;
        for (size_t i = 0; i < ctx.A->dim(); ++i)
            if (ctx.A->basis((int)i).radical) ++flagged;
        CHECK(rad.size() == flagged);
        // every trace-radical element is supported on flagged basis elements
        for (const auto& v : rad)
            for (size_t i = 0; i < v.size(); ++i)
                if (!Field::is_zero(v[i])) CHECK(ctx.A->basis((int)i).radical);
        // and the same for H
        auto radH = radical_basis(ctx.H->to_sca());
        size_t flaggedH = 0;
        for (size_t i = 0; i < ctx.H->dim(); ++i)
            if (ctx.H->basis((int)i).radical) ++flaggedH;
        CHECK(radH.size() == flaggedH);
        CHECK(radH.size() == ctx.dim_I());
    }
}

TEST_CASE("hom spaces of projectives") {
    Field Q;
    auto f = build_datum_context(Q, favourite());
    int g0 = f.a_class({1, 1, 0}), g2 = f.a_class({1, 3, 0});
    // the two length-2 paths land in Hom(P_3, P_1)
    CHECK(f.A->hom_basis(g2, g0).size() == 2);
    CHECK(f.A->hom_basis(g0, g2).empty());
    for (size_t v = 0; v < f.A->num_vertices(); ++v)
        CHECK(f.A->hom_basis((int)v, (int)v).size() == 1); // no cyclic paths
    // sum of dim P_v = dim A
    size_t total = 0;
    for (size_t v = 0; v < f.A->num_vertices(); ++v) total += f.A->proj_basis((int)v).size();
    CHECK(total == f.A->dim());
    // cat O datum has a loop at the glued vertex
    auto c = build_datum_context(Q, cat_o());
    int gl = c.a_class({1, 1, 0});
    CHECK(c.A->hom_basis(gl, gl).size() == 2); // e and the path (1,3,1)
}

TEST_CASE("resolution algebra B") {
    Field Q;
    auto d = build_datum_context(Q, dual());
    auto B = build_resolution_algebra(d);
    CHECK(B.B->dim() == 2 + 3 + 1 + 3);
    CHECK(B.witness_gentle);
    check_witness(d, B);

    auto f = build_datum_context(Q, favourite());
    auto Bf = build_resolution_algebra(f);
    CHECK(Bf.B->dim() == 9 + 12 + 6 + 12);
    CHECK(Bf.witness_gentle);
    check_witness(f, Bf);

    // rad(B) = L = [[I, H], [I, I]]: AA radical + all AH + all HA + HH radical
    auto radB = radical_basis(Bf.B->to_sca());
    size_t flagged = 0;
    for (size_t i = 0; i < Bf.B->dim(); ++i)
        if (Bf.B->basis((int)i).radical) ++flagged;
    CHECK(radB.size() == flagged);
    CHECK(flagged == 6 + 12 + 6 + 6);
    for (const auto& v : radB)
        for (size_t i = 0; i < v.size(); ++i)
            if (!Field::is_zero(v[i])) CHECK(Bf.B->basis((int)i).radical);
}

TEST_CASE("skew-gentle B is skew-gentle again") {
    Field Q;
    auto s = build_datum_context(Q, tubular_degen());
    auto Bs = build_resolution_algebra(s);
    CHECK_FALSE(Bs.witness_gentle);
    check_witness(s, Bs);
}

TEST_CASE("gl.dim(B) = 2 via minimal resolutions of all simples") {
    Field Q;
    for (const auto& vd : {dual(), cat_o(), favourite()}) {
        auto ctx = build_datum_context(Q, vd);
        auto B = build_resolution_algebra(ctx);
        size_t max_len = 0;
        for (size_t c = 0; c < B.B->simple_classes().size(); ++c) {
            Resolution r = minimal_resolution(*B.B, (int)c, 5);
            REQUIRE(r.terminated);
            max_len = std::max(max_len, r.comps.size() - 1);
        }
        CHECK(max_len == 2);
    }
}

TEST_CASE("dual numbers: the simple has an unbounded resolution") {
    Field Q;
    auto ctx = build_datum_context(Q, dual());
    Resolution r = minimal_resolution(*ctx.A, 0, 5);
    CHECK_FALSE(r.terminated);
    CHECK(r.comps.size() == 6);
    for (const auto& c : r.comps) CHECK(c.size() == 1);
}

TEST_CASE("fat point contexts") {
    Field Q;
    auto f1 = build_fat_point_context(Q, 1);
    CHECK(f1.A->dim() == 2);
    CHECK(f1.H->dim() == 3);
    auto f2 = build_fat_point_context(Q, 2);
    CHECK(f2.A->dim() == 3);
    CHECK(f2.A->num_vertices() == 1);
    CHECK(f2.H->dim() == 6);
    auto f3 = build_fat_point_context(Q, 3);
    CHECK(f3.A->dim() == 4);
    // shared radical
    auto radA = radical_basis(f3.A->to_sca());
    CHECK(radA.size() == 3);
    CHECK(radA.size() == f3.dim_I());
}

TEST_CASE("fp support for datum algebras") {
    Field F(101);
    auto f = build_datum_context(F, favourite());
    CHECK(f.A->dim() == 9);
    CHECK(radical_basis(f.A->to_sca()).size() == 6);
}

TEST_CASE("gl.dim(B) = 2 holds for the skew-gentle datum too") {
    Field Q;
    auto ctx = build_datum_context(Q, tubular_degen());
    auto B = build_resolution_algebra(ctx);
    size_t max_len = 0;
    for (size_t c = 0; c < B.B->simple_classes().size(); ++c) {
        Resolution r = minimal_resolution(*B.B, (int)c, 5);
        REQUIRE(r.terminated);
        max_len = std::max(max_len, r.comps.size() - 1);
    }
    CHECK(max_len == 2);
    // every tau-orbit of this datum dies, so A itself already has finite
    // global dimension
    CHECK(special_cycles(tubular_degen()).empty());
    for (size_t c = 0; c < ctx.A->simple_classes().size(); ++c)
        CHECK(minimal_resolution(*ctx.A, (int)c, 8).terminated);
}
