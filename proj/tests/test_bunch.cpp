#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bunch.hpp"

using namespace gentle;

static ValidatedDatum dual_d() { return ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}}}); }
static ValidatedDatum fav_d() {
    return ValidatedDatum::validate({{3, 3}, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{1, 3}, {2, 3}}}});
}

// the six-pair cyclic word of the worked band example: a c a d a c
static FullWord acadac() {
    FullWord w;
    w.cyclic = true;
    w.x = {"a1", "a2", "c2", "c1", "a1", "a2", "d2", "d1", "a1", "a2", "c2", "c1"};
    for (int k = 0; k < 12; ++k) w.rho.push_back(k % 2 == 0 ? '~' : '-');
    return w;
}

TEST_CASE("fixture bunches validate") {
    auto B = bunch_example_chains();
    CHECK_FALSE(B.is_semichain());
    CHECK(B.dash("a1", "c1"));
    CHECK_FALSE(B.dash("a1", "c2"));
    CHECK(*B.partner("c1") == "c2");
    auto S = bunch_example_semichains();
    CHECK(S.is_semichain());
    CHECK(*S.partner("a") == "a");
    auto C = bunch_example_chessboard(3);
    CHECK(C.idx.size() == 1);
    CHECK(C.ties.size() == 3);
}

TEST_CASE("word validation") {
    auto B = bunch_example_chains();
    FullWord w = acadac();
    validate_word(B, w);
    // broken alternation
    FullWord bad = w;
    bad.rho[1] = '~';
    CHECK_THROWS_AS(validate_word(B, bad), domain_error);
    // tied first element must open with ~
    FullWord lin;
    lin.x = {"a1", "c1"};
    lin.rho = {'-'};
    CHECK_THROWS_AS(validate_word(B, lin), domain_error);
    FullWord ok;
    ok.x = {"a1", "a2", "c2", "c1"};
    ok.rho = {'~', '-', '~'};
    validate_word(B, ok);
}

TEST_CASE("the worked band matrix, block by block") {
    auto B = bunch_example_chains();
    Field F;
    for (int m : {1, 2}) {
        RepX R = band_rep(B, acadac(), m, F, F.from_long(5));
        CHECK(R.position_class ==
              std::vector<std::string>{"a1=a2", "c1=c2", "a1=a2", "d1=d2", "a1=a2", "c1=c2"});
        REQUIRE(R.entries.size() == 6);
        // expected: (2,1) phi2 I, (2,3) phi1 I, (4,3) psi2 I, (4,5) psi1 I,
        // (6,5) phi2 I, (6,1) phi1 J   [1-based positions]
        struct Want {
            size_t row, col;
            const char* gen;
            bool jordan;
        };
        std::vector<Want> want = {{1, 0, "w(a2,c2)", false}, {1, 2, "w(a1,c1)", false},
                                  {3, 2, "w(a2,d2)", false}, {3, 4, "w(a1,d1)", false},
                                  {5, 4, "w(a2,c2)", false}, {5, 0, "w(a1,c1)", true}};
        for (const auto& wt : want) {
            bool found = false;
            for (const auto& e : R.entries) {
                if (e.row != wt.row || e.col != wt.col) continue;
                found = true;
                CHECK(e.gen == wt.gen);
                for (int t = 0; t < m; ++t)
                    for (int c = 0; c < m; ++c) {
                        if (t == c)
                            CHECK(Field::eq(e.block.at(t, c),
                                            wt.jordan ? F.from_long(5) : F.one()));
                        else if (t == c + 1 && wt.jordan)
                            CHECK(Field::eq(e.block.at(t, c), F.one()));
                        else
                            CHECK(Field::is_zero(e.block.at(t, c)));
                    }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("sigma is trivial on same-side ties and counts mixed ones") {
    auto B = bunch_example_chains();
    CHECK(sigma_pair(B, "a1", "a2") == 0);
    CHECK(sigma_pair(B, "c1", "c2") == 0);
    FullWord w = acadac();
    for (int k = 1; k <= 6; ++k) CHECK(sigma_shift(B, w, k) == 0);
    // chessboard ties cross E and F
    auto C = bunch_example_chessboard(2);
    CHECK(sigma_pair(C, "x1", "y1") == 1);
}

TEST_CASE("band words: shifts and reversal") {
    auto B = bunch_example_chains();
    FullWord w = acadac();
    FullWord s = shift_word(w, 1);
    validate_word(B, s);
    CHECK(s.x[0] == "c2");
    FullWord r = reverse_word(w);
    validate_word(B, r);
    // non-periodicity: aa word repeated twice is periodic
    FullWord per;
    per.cyclic = true;
    per.x = {"a1", "a2", "c2", "c1", "a1", "a2", "c2", "c1"};
    for (int k = 0; k < 8; ++k) per.rho.push_back(k % 2 == 0 ? '~' : '-');
    Field F;
    CHECK_THROWS_AS(band_rep(B, per, 1, F, F.one()), domain_error);
}

TEST_CASE("End of string and band representations is local") {
    auto B = bunch_example_chains();
    Field F;
    // string: a1 ~ a2 - c2 ~ c1
    FullWord v;
    v.x = {"a1", "a2", "c2", "c1"};
    v.rho = {'~', '-', '~'};
    RepX R = string_rep(B, v);
    SCA E = rep_end_algebra(F, R);
    CHECK(find_nontrivial_idempotent(E).kind == IdempotentResult::Local);

    RepX Rb = band_rep(B, acadac(), 1, F, F.from_long(2));
    SCA Eb = rep_end_algebra(F, Rb);
    CHECK(find_nontrivial_idempotent(Eb).kind == IdempotentResult::Local);

    RepX R2 = band_rep(B, acadac(), 2, F, F.from_long(2));
    SCA E2 = rep_end_algebra(F, R2);
    CHECK(find_nontrivial_idempotent(E2).kind == IdempotentResult::Local);
}

TEST_CASE("bunch of a datum") {
    auto B = bunch_of_datum(dual_d(), -1, 0);
    CHECK(B.idx.size() == 4);
    for (const auto& ix : B.idx) {
        CHECK(ix.E.size() == 1);
        CHECK(ix.F.size() == 2);
    }
    CHECK_FALSE(B.is_semichain());
    // skew datum gives self-ties exactly at the self-tied positions
    auto skew = ValidatedDatum::validate(
        {{3, 3}, {{{1, 1}, {2, 1}}, {{1, 3}, {2, 3}}, {{1, 2}, {1, 2}}, {{2, 2}, {2, 2}}}});
    auto S = bunch_of_datum(skew, 0, 0);
    CHECK(S.is_semichain());
    int self = 0;
    for (const auto& [a, b] : S.ties)
        if (a == b) ++self;
    CHECK(self == 2);
}

TEST_CASE("unreduce reinserts the u-letters") {
    auto d = fav_d();
    // Example 6.8(1) reduced band word
    BandDatum w;
    w.segs = {{2, 3, 2, -1, false}, {1, 2, 1, 0, false}, {2, 2, 1, 0, true}, {1, 3, 2, -1, true}};
    w.mult = 1;
    w.pi = Field().from_long(2);
    FullWord full = unreduce_band(d, w);
    CHECK(full.cyclic);
    CHECK(full.x.size() == 16); // 4 q-pairs + 4 u-pairs
    int ucount = 0;
    for (const auto& x : full.x)
        if (x[0] == 'u') ++ucount;
    CHECK(ucount == 8);
    auto B = bunch_of_datum(d, -2, 0);
    validate_word(B, full);
    // reversal commutes with unreduce on strings
    StringDatum v{{{2, 4, 3, -1, true},
                   {1, 3, 1, 0, false},
                   {2, 2, 1, 0, true},
                   {1, 3, 2, -1, true},
                   {2, 4, 3, -2, true}}};
    FullWord a = unreduce_string(d, reverse_string(d, v));
    FullWord b = reverse_word(unreduce_string(d, v));
    CHECK(a.x == b.x);
    CHECK(a.rho == b.rho);
}

TEST_CASE("cross-module equality of word and complex matrices") {
    Field Q;
    auto fctx = build_datum_context(Q, fav_d());
    StringDatum v{{{2, 4, 3, -1, true},
                   {1, 3, 1, 0, false},
                   {2, 2, 1, 0, true},
                   {1, 3, 2, -1, true},
                   {2, 4, 3, -2, true}}};
    cross_check_string(fctx, v);
    auto dctx = build_datum_context(Q, dual_d());
    StringDatum x3{{{1, 3, 1, -2, true}, {1, 2, 1, -1, false}, {1, 2, 1, 0, false},
                    {1, 3, 2, 0, true}}};
    cross_check_string(dctx, x3);
    for (const auto& w : enumerate_strings(fav_d(), 3, -2, 0)) cross_check_string(fctx, w);
}
