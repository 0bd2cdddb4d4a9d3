#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "datum.hpp"

using namespace gentle;

static ValidatedDatum dual() {
    return ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}}});
}
static ValidatedDatum cat_o() { // m=(3), (1,1) ~ (1,3)
    return ValidatedDatum::validate({{3}, {{{1, 1}, {1, 3}}}});
}
static ValidatedDatum favourite() { // m=(3,3), (1,j) ~ (2,j)
    return ValidatedDatum::validate({{3, 3}, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{1, 3}, {2, 3}}}});
}
static ValidatedDatum tubular_degen() { // m=(3,3) skew datum
    return ValidatedDatum::validate(
        {{3, 3}, {{{1, 1}, {2, 1}}, {{1, 3}, {2, 3}}, {{1, 2}, {1, 2}}, {{2, 2}, {2, 2}}}});
}

TEST_CASE("validation") {
    CHECK(dual().is_gentle());
    CHECK(ValidatedDatum::validate({{3}, {}}).is_gentle());
    CHECK_FALSE(tubular_degen().is_gentle());
    // (1,1) related twice
    CHECK_THROWS_AS(ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}, {{1, 1}, {1, 1}}}}),
                    domain_error);
    CHECK_THROWS_AS(ValidatedDatum::validate({{2}, {{{1, 1}, {1, 3}}}}), domain_error);
    CHECK_THROWS_AS(ValidatedDatum::validate({{1}, {}}), domain_error);
}

TEST_CASE("index sets") {
    auto s = build_index_sets(cat_o());
    CHECK(s.omega.size() == 3);
    CHECK(s.omega_tilde.size() == 2);
    CHECK(s.omega_tilde[0].type == VertexType::First);
    CHECK(s.omega_tilde[1].type == VertexType::Third);

    auto f = build_index_sets(favourite());
    CHECK(f.omega_tilde.size() == 3);
    for (const auto& c : f.omega_tilde) CHECK(c.type == VertexType::First);

    auto t = build_index_sets(tubular_degen());
    CHECK(t.omega_tilde.size() == 6);
    int first = 0, second = 0;
    for (const auto& c : t.omega_tilde) {
        if (c.type == VertexType::First) ++first;
        if (c.type == VertexType::Second) ++second;
    }
    CHECK(first == 2);
    CHECK(second == 4);
    CHECK(t.omega_bar.size() == 8); // |Omega| + #self-ties
    CHECK(t.omega_hat.size() == 4); // |Omega| - #distinct tied pairs
}

TEST_CASE("cardinality identities on assorted datums") {
    for (const auto& d : {dual(), cat_o(), favourite(), tubular_degen()}) {
        auto s = build_index_sets(d);
        size_t self = 0, pairs = 0;
        for (const auto& r : d.raw().relations)
            (r.first == r.second ? self : pairs)++;
        CHECK(s.omega.size() == d.raw().omega_size());
        CHECK(s.omega_bar.size() == s.omega.size() + self);
        CHECK(s.omega_hat.size() == s.omega.size() - pairs);
        CHECK(s.omega_tilde.size() == s.omega.size() - pairs + self);
    }
}

TEST_CASE("tau") {
    CHECK(*tau(dual(), {1, 1}) == Omega{1, 1});
    CHECK_FALSE(tau(dual(), {1, 2}).has_value()); // j = m_i
    CHECK(*tau(favourite(), {1, 1}) == Omega{2, 2});
    CHECK(*tau(favourite(), {2, 2}) == Omega{1, 3});
    CHECK_FALSE(tau(cat_o(), {1, 1}).has_value()); // (1,2) untied
    CHECK(*tau(cat_o(), {1, 2}) == Omega{1, 1});
}

TEST_CASE("special cycles") {
    auto c = special_cycles(dual());
    REQUIRE(c.size() == 1);
    CHECK(c[0] == std::vector<Omega>{{1, 1}});
    CHECK(special_cycles(favourite()).empty());
    CHECK(special_cycles(cat_o()).empty());
    // two disjoint loops: m=(2,2), (1,1)~(1,2), (2,1)~(2,2)
    auto two = ValidatedDatum::validate({{2, 2}, {{{1, 1}, {1, 2}}, {{2, 1}, {2, 2}}}});
    CHECK(special_cycles(two).size() == 2);
    // longer cycle: m=(2,2), (1,1)~(2,2), (2,1)~(1,2)
    auto swap2 = ValidatedDatum::validate({{2, 2}, {{{1, 2}, {2, 1}}, {{2, 2}, {1, 1}}}});
    auto cyc = special_cycles(swap2);
    REQUIRE(cyc.size() == 1);
    CHECK(cyc[0].size() == 2);
}
