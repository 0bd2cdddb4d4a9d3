#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dot.hpp"
#include "jsonio.hpp"

using namespace gentle;

static ValidatedDatum fav_d() {
    return ValidatedDatum::validate({{3, 3}, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{1, 3}, {2, 3}}}});
}

TEST_CASE("datum json round trip is bit-exact") {
    std::string raw = R"({"m":[3,3],"relations":[[[1,1],[2,1]],[[1,3],[2,3]]]})";
    Datum d = datum_from_json(json::parse(raw));
    ValidatedDatum vd = ValidatedDatum::validate(d);
    CHECK(datum_to_json(vd.raw()).dump() == raw);
    // reparses through the same schema
    Datum d2 = datum_from_json(datum_to_json(vd.raw()));
    CHECK(datum_to_json(d2).dump() == raw);
    CHECK_THROWS_AS(datum_from_json(json::parse(R"({"m":"x"})")), domain_error);
    CHECK_THROWS_AS(datum_from_json(json::parse(R"({"relations":[]})")), domain_error);
}

TEST_CASE("word json round trip") {
    Field Q;
    std::string raw =
        R"({"kind":"band","segments":[{"i":2,"a":3,"b":2,"r":-1,"orient":"high-first"}],"m":2,"pi":"2"})";
    AnyWord w = word_from_json(Q, json::parse(raw));
    CHECK(w.band);
    CHECK(w.bnd.mult == 2);
    CHECK(Field::eq(w.bnd.pi, Q.from_long(2)));
    CHECK(word_to_json(w).dump() == raw);
    AnyWord w2 = word_from_json(Q, word_to_json(w));
    CHECK(word_to_json(w2).dump() == raw);
}

TEST_CASE("complex json round trip") {
    Field Q;
    auto ctx = build_datum_context(Q, fav_d());
    BandDatum b;
    b.segs = {{2, 3, 2, -1, false}, {1, 2, 1, 0, false}, {2, 2, 1, 0, true}, {1, 3, 2, -1, true}};
    b.mult = 2;
    b.pi = Q.parse_value("1/3");
    ProjComplex X = band_complex(ctx, b);
    json j = complex_to_json(ctx, X);
    ProjComplex Y = complex_from_json(ctx, j);
    CHECK(equal_complexes(X, Y));
    CHECK(complex_to_json(ctx, Y).dump() == j.dump());
    // malformed entries are rejected
    json bad = j;
    bad["diff"]["-2"][0][0] = json::array({json::array({"1", json::array({9, 9, 9})})});
    CHECK_THROWS_AS(complex_from_json(ctx, bad), domain_error);
}

TEST_CASE("idempotent entries parse for non-minimal complexes") {
    Field Q;
    auto ctx = build_datum_context(Q, fav_d());
    json j = json::parse(R"({"degrees":{"-1":["g2"],"0":["g2"]},"diff":{"-1":[[[["1","e"]]]]}})");
    ProjComplex X = complex_from_json(ctx, j);
    auto chk = verify_complex(X);
    CHECK(chk.is_complex);
    CHECK_FALSE(chk.is_minimal);
}

TEST_CASE("dot outputs") {
    Field Q;
    auto dual = build_datum_context(Q, ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}}}));
    std::string quiver = quiver_dot(dual);
    CHECK(quiver.find("g0 -> g0") != std::string::npos);
    CHECK(quiver.find("(1,2,1)") != std::string::npos);
    auto fav = fav_d();
    BandDatum b;
    b.segs = {{2, 3, 2, -1, false}, {1, 2, 1, 0, false}, {2, 2, 1, 0, true}, {1, 3, 2, -1, true}};
    b.mult = 1;
    b.pi = Q.one();
    GluingDiagram g = band_gluing(fav, b);
    CHECK(g.nodes.size() == 8);
    CHECK(g.solid.size() == 4);
    CHECK(g.dotted.size() == 4);
    std::string dot = gluing_dot(fav, g);
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 10);
    // the empty diagram is the empty digraph
    GluingDiagram empty;
    CHECK(gluing_dot(fav, empty) == "digraph gluing {\n}\n");
}

TEST_CASE("skew-gentle complex entries carry sign slots") {
    Field Q;
    auto skew = build_datum_context(
        Q, ValidatedDatum::validate(
               {{3, 3}, {{{1, 1}, {2, 1}}, {{1, 3}, {2, 3}}, {{1, 2}, {1, 2}}, {{2, 2}, {2, 2}}}}));
    // a one-entry complex using a signed path
    int p = skew.a_path(1, 2, 1, +1, 0);
    REQUIRE(p >= 0);
    int src = skew.A->basis(p).src, tgt = skew.A->basis(p).tgt;
    AMat d({tgt}, {src});
    d.at(0, 0) = skew.A->elt(p, Q.one());
    ProjComplex X = make_complex(*skew.A, -1, {{src}, {tgt}}, {d});
    json j = complex_to_json(skew, X);
    ProjComplex Y = complex_from_json(skew, j);
    CHECK(equal_complexes(X, Y));
}
