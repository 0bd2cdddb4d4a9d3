#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algebra.hpp"
#include "complexes.hpp"

using namespace gentle;

static AlgebraContext dual_ctx() {
    return build_datum_context(Field(), ValidatedDatum::validate({{2}, {{{1, 1}, {1, 2}}}}));
}

// X_n = A -> A -> ... -> A (n terms, eps differentials) ending in degree 0
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

TEST_CASE("verify_complex on the dual-numbers tower") {
    auto ctx = dual_ctx();
    for (int n : {1, 2, 4}) {
        auto c = verify_complex(Xn(ctx, n));
        CHECK(c.is_complex);
        CHECK(c.is_minimal);
    }
    // identity two-term complex: a complex but not minimal
    const BasedAlgebra& A = *ctx.A;
    AMat d({0}, {0});
    d.at(0, 0) = A.elt(A.idempotent_index(0), A.field().one());
    auto id2 = make_complex(A, -1, {{0}, {0}}, {d});
    auto c = verify_complex(id2);
    CHECK(c.is_complex);
    CHECK_FALSE(c.is_minimal);
    // d^2 != 0 is detected
    AMat d2 = d;
    auto bad = make_complex(A, -2, {{0}, {0}, {0}}, {d, d2});
    CHECK_FALSE(verify_complex(bad).is_complex);
}

TEST_CASE("cohomology of X_n: one dimension at each end") {
    auto ctx = dual_ctx();
    for (int n : {2, 3, 5}) {
        auto h = cohomology_dims(Xn(ctx, n));
        auto t = h.totals();
        REQUIRE((int)t.size() == n);
        CHECK(t.front() == 1);
        CHECK(t.back() == 1);
        for (size_t k = 1; k + 1 < t.size(); ++k) CHECK(t[k] == 0);
    }
    CHECK(cohomology_dims(zero_complex(*ctx.A)).dims.empty());
}

TEST_CASE("minimize strips contractible summands") {
    auto ctx = dual_ctx();
    const BasedAlgebra& A = *ctx.A;
    AMat d({0}, {0});
    d.at(0, 0) = A.elt(A.idempotent_index(0), A.field().one());
    auto id2 = make_complex(A, -1, {{0}, {0}}, {d});
    CHECK(minimize(id2).empty());

    auto x3 = Xn(ctx, 3);
    CHECK(equal_complexes(minimize(x3), x3));

    auto sum = direct_sum(x3, shift_complex(id2, 1));
    auto m = minimize(sum);
    CHECK(verify_complex(m).is_minimal);
    CHECK(is_homotopy_iso(m, x3));
    // cohomology is preserved on the nose
    auto h1 = cohomology_dims(sum), h2 = cohomology_dims(m);
    CHECK(h1.totals() == h2.totals());
}

TEST_CASE("hom_homotopy dimensions over dual numbers") {
    auto ctx = dual_ctx();
    auto x1 = Xn(ctx, 1);
    CHECK(hom_homotopy(x1, x1).dimension == 2); // identity and eps
    CHECK(hom_homotopy(x1, shift_complex(x1, 1)).dimension == 0);
    auto x2 = Xn(ctx, 2);
    size_t d = hom_homotopy(x2, x2).dimension;
    CHECK(hom_homotopy(x2, direct_sum(x2, x2)).dimension == 2 * d);
}

TEST_CASE("decompose: towers and sums") {
    auto ctx = dual_ctx();
    auto x2 = Xn(ctx, 2), x3 = Xn(ctx, 3);
    CHECK(decompose(x2).size() == 1);
    auto sum = direct_sum(x2, shift_complex(x3, 1));
    auto parts = decompose(sum);
    REQUIRE(parts.size() == 2);
    bool m1 = (is_homotopy_iso(parts[0], x2) && is_homotopy_iso(parts[1], shift_complex(x3, 1)));
    bool m2 = (is_homotopy_iso(parts[1], x2) && is_homotopy_iso(parts[0], shift_complex(x3, 1)));
    CHECK((m1 || m2));
    // a doubled summand (matrix-algebra end quotient)
    auto dbl = direct_sum(x2, x2);
    auto p2 = decompose(dbl);
    REQUIRE(p2.size() == 2);
    CHECK(is_homotopy_iso(p2[0], x2));
    CHECK(is_homotopy_iso(p2[1], x2));
    CHECK(decompose(zero_complex(*ctx.A)).empty());
}

TEST_CASE("is_homotopy_iso basics") {
    auto ctx = dual_ctx();
    auto x2 = Xn(ctx, 2);
    CHECK(is_homotopy_iso(x2, x2));
    CHECK_FALSE(is_homotopy_iso(x2, shift_complex(x2, 1)));
    CHECK_FALSE(is_homotopy_iso(x2, Xn(ctx, 3)));
    CHECK_FALSE(is_homotopy_iso(x2, direct_sum(x2, x2)));
    CHECK(is_homotopy_iso(direct_sum(x2, Xn(ctx, 3)), direct_sum(Xn(ctx, 3), x2)));
}

TEST_CASE("decompose is a partition of the component multiset") {
    auto ctx = dual_ctx();
    auto sum = direct_sum(direct_sum(Xn(ctx, 1), Xn(ctx, 2)), Xn(ctx, 2));
    auto parts = decompose(sum);
    REQUIRE(parts.size() == 3);
    size_t total = 0;
    for (const auto& p : parts)
        for (const auto& c : p.comps) total += c.size();
    CHECK(total == 5);
    // additivity of cohomology
    auto h = cohomology_dims(sum).totals();
    size_t hsum = 0;
    for (auto x : h) hsum += x;
    size_t psum = 0;
    for (const auto& p : parts)
        for (auto x : cohomology_dims(p).totals()) psum += x;
    CHECK(hsum == psum);
}

TEST_CASE("End_Hot local iff indecomposable") {
    auto ctx = dual_ctx();
    auto e = end_homotopy_algebra(Xn(ctx, 3));
    CHECK(find_nontrivial_idempotent(e.algebra).kind == IdempotentResult::Local);
    auto e2 = end_homotopy_algebra(direct_sum(Xn(ctx, 3), Xn(ctx, 1)));
    CHECK(find_nontrivial_idempotent(e2.algebra).kind == IdempotentResult::Found);
}

TEST_CASE("contractible complexes decompose to nothing") {
    auto ctx = dual_ctx();
    const BasedAlgebra& A = *ctx.A;
    const Field& F = A.field();
    AMat d({0, 0}, {0, 0});
    d.at(0, 0) = A.elt(A.idempotent_index(0), F.one());
    d.at(0, 1) = A.elt(A.idempotent_index(0), F.from_long(2));
    d.at(1, 0) = A.elt(A.idempotent_index(0), F.from_long(1));
    d.at(1, 1) = A.elt(A.idempotent_index(0), F.from_long(3));
    auto X = make_complex(A, -1, {{0, 0}, {0, 0}}, {d});
    CHECK(decompose(X).empty());
    CHECK(minimize(X).empty());
}
