// Exercises the shared C API the way the CLI does.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gentle/gentle.h>
#include <string>

namespace {
const char* FAV = R"({"m":[3,3],"relations":[[[1,1],[2,1]],[[1,2],[2,2]],[[1,3],[2,3]]]})";
const char* BAND = R"({"kind":"band","segments":[
  {"i":2,"a":3,"b":2,"r":-1,"orient":"high-first"},
  {"i":1,"a":2,"b":1,"r":0,"orient":"high-first"},
  {"i":2,"a":2,"b":1,"r":0,"orient":"low-first"},
  {"i":1,"a":3,"b":2,"r":-1,"orient":"low-first"}],"m":1,"pi":"2"})";

struct Str {
    char* s = nullptr;
    ~Str() { gentle_string_free(s); }
    std::string view() const { return s ? s : ""; }
};
} // namespace

TEST_CASE("context lifecycle and datum validation") {
    Str out;
    CHECK(gentle_datum_validate(FAV, 7, 0, &out.s) == GENTLE_OK);
    CHECK(out.view().find("\"gentle\":true") != std::string::npos);
    CHECK(out.view().find("\"seed\":7") != std::string::npos);

    gentle_ctx* ctx = nullptr;
    CHECK(gentle_ctx_new("Q", FAV, 7, 0, &ctx) == GENTLE_OK);
    Str info;
    CHECK(gentle_algebra_info(ctx, &info.s) == GENTLE_OK);
    CHECK(info.view().find("\"dimA\":9") != std::string::npos);
    gentle_ctx_free(ctx);

    gentle_ctx* bad = nullptr;
    CHECK(gentle_ctx_new("Q", R"({"m":[1]})", 7, 0, &bad) == GENTLE_ERR_DOMAIN);
    CHECK(std::string(gentle_last_error()).find("m_1") != std::string::npos);
    CHECK(gentle_ctx_new("Fp:6", FAV, 7, 0, &bad) == GENTLE_ERR_DOMAIN);
}

TEST_CASE("word to complex to decomposition through the C surface") {
    gentle_ctx* ctx = nullptr;
    REQUIRE(gentle_ctx_new("Q", FAV, 3, 0, &ctx) == GENTLE_OK);
    gentle_complex* X = nullptr;
    REQUIRE(gentle_word_build(ctx, BAND, &X) == GENTLE_OK);
    Str chk, coh, dec, iso, cert;
    CHECK(gentle_complex_check(ctx, X, &chk.s) == GENTLE_OK);
    CHECK(chk.view().find("\"isMinimal\":true") != std::string::npos);
    CHECK(gentle_complex_cohomology(ctx, X, &coh.s) == GENTLE_OK);
    CHECK(gentle_complex_decompose(ctx, X, &dec.s) == GENTLE_OK);
    CHECK(dec.view().find("\"count\":1") != std::string::npos);
    CHECK(gentle_complex_iso(ctx, X, X, &iso.s) == GENTLE_OK);
    CHECK(iso.view().find("\"isomorphic\":true") != std::string::npos);
    CHECK(gentle_rouquier_certify(ctx, X, &cert.s) == GENTLE_OK);
    CHECK(cert.view().find("\"generated\":true") != std::string::npos);
    // JSON round trip through the surface
    Str js;
    CHECK(gentle_complex_to_json(ctx, X, &js.s) == GENTLE_OK);
    gentle_complex* Y = nullptr;
    CHECK(gentle_complex_parse(ctx, js.s, &Y) == GENTLE_OK);
    Str iso2;
    CHECK(gentle_complex_iso(ctx, X, Y, &iso2.s) == GENTLE_OK);
    CHECK(iso2.view().find("\"isomorphic\":true") != std::string::npos);
    gentle_complex_free(Y);
    gentle_complex_free(X);
    gentle_ctx_free(ctx);
}

TEST_CASE("enumeration, bunch, dot and fat point") {
    gentle_ctx* ctx = nullptr;
    REQUIRE(gentle_ctx_new("Q", FAV, 3, 0, &ctx) == GENTLE_OK);
    Str en, bunch, dot;
    CHECK(gentle_word_enumerate(ctx, 2, -1, 0, 0, &en.s) == GENTLE_OK);
    CHECK(en.view().find("\"kind\":\"strings\"") != std::string::npos);
    CHECK(gentle_bunch_show(ctx, -1, 0, &bunch.s) == GENTLE_OK);
    CHECK(bunch.view().find("\"semichain\":false") != std::string::npos);
    CHECK(gentle_quiver_dot(ctx, &dot.s) == GENTLE_OK);
    CHECK(dot.view().find("digraph quiver") != std::string::npos);
    gentle_ctx_free(ctx);
    Str fp;
    CHECK(gentle_rouquier_fatpoint("Q", 2, 1, 0, &fp.s) == GENTLE_OK);
    CHECK(fp.view().find("\"certificate\":true") != std::string::npos);
    CHECK(gentle_rouquier_fatpoint("Q", 0, 1, 0, &fp.s) == GENTLE_ERR_DOMAIN);
}

TEST_CASE("deterministic outputs") {
    gentle_ctx* a = nullptr;
    gentle_ctx* b = nullptr;
    REQUIRE(gentle_ctx_new("Q", FAV, 99, 0, &a) == GENTLE_OK);
    REQUIRE(gentle_ctx_new("Q", FAV, 99, 0, &b) == GENTLE_OK);
    gentle_complex *X = nullptr, *Y = nullptr;
    REQUIRE(gentle_word_build(a, BAND, &X) == GENTLE_OK);
    REQUIRE(gentle_word_build(b, BAND, &Y) == GENTLE_OK);
    Str da, db;
    CHECK(gentle_complex_decompose(a, X, &da.s) == GENTLE_OK);
    CHECK(gentle_complex_decompose(b, Y, &db.s) == GENTLE_OK);
    CHECK(da.view() == db.view());
    gentle_complex_free(X);
    gentle_complex_free(Y);
    gentle_ctx_free(a);
    gentle_ctx_free(b);
}
