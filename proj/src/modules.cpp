#include "modules.hpp"
#include <algorithm>

namespace gentle {

namespace {

// basis of the column space, as columns of the returned matrix
QMatrix col_space(const Field& F, const QMatrix& m) {
    Echelon e = echelon_form(F, m.transposed());
    QMatrix out(m.rows(), e.rank());
    for (size_t r = 0; r < e.rank(); ++r)
        for (size_t c = 0; c < m.rows(); ++c) out.at(c, r) = e.rref.at(r, c);
    return out;
}

struct Quotient {
    QMatrix proj; // quotient dim x space dim
    QMatrix sec;  // space dim x quotient dim
};

// quotient of k^n by the column span of S
Quotient quotient_by_span(const Field& F, size_t n, const QMatrix& S) {
    Echelon e = echelon_form(F, S.transposed());
    std::vector<bool> inside(n, false);
    for (size_t p : e.pivots) inside[p] = true;
    std::vector<size_t> keep;
    for (size_t c = 0; c < n; ++c)
        if (!inside[c]) keep.push_back(c);
    Quotient q{QMatrix(keep.size(), n), QMatrix(n, keep.size())};
    for (size_t k = 0; k < keep.size(); ++k) {
        q.proj.at(k, keep[k]) = F.one();
        q.sec.at(keep[k], k) = F.one();
    }
    for (size_t r = 0; r < e.pivots.size(); ++r)
        for (size_t k = 0; k < keep.size(); ++k)
            q.proj.at(k, e.pivots[r]) = F.neg(e.rref.at(r, keep[k]));
    return q;
}

FModule sum_module(const BasedAlgebra& A, const std::vector<int>& verts) {
    SumExpansion ex = expand_sum(A, verts);
    FModule M{&A, ex.dim(), {}};
    for (size_t b = 0; b < A.dim(); ++b) {
        QMatrix act(M.dim, M.dim);
        for (size_t c = 0; c < verts.size(); ++c) {
            QMatrix loc = A.left_action(A.elt((int)b, A.field().one()), verts[c]);
            for (size_t i = 0; i < loc.rows(); ++i)
                for (size_t j = 0; j < loc.cols(); ++j)
                    act.at(ex.comp_start[c] + i, ex.comp_start[c] + j) = loc.at(i, j);
        }
        M.act.push_back(std::move(act));
    }
    return M;
}

struct CoverData {
    std::vector<int> verts;  // cover components
    QMatrix gen_images;      // module coordinates of the component generators
};

// minimal projective cover of M: one representative projective per simple
// class, with multiplicity the class multiplicity in top(M)
CoverData projective_cover(const FModule& M) {
    const BasedAlgebra& A = *M.alg;
    const Field& F = A.field();
    // radical submodule: span of b.M over radical basis elements
    QMatrix stack(M.dim, 0);
    for (size_t b = 0; b < A.dim(); ++b)
        if (A.basis((int)b).radical) stack = stack.hstack(M.act[b]);
    QMatrix radsp = col_space(F, stack);
    Quotient top = quotient_by_span(F, M.dim, radsp);

    CoverData cd;
    QMatrix images(M.dim, 0);
    for (const auto& cls : A.simple_classes()) {
        int rep = cls[0];
        QMatrix etop = top.proj.mul(F, M.act[A.idempotent_index(rep)].mul(F, top.sec));
        QMatrix gen_top = col_space(F, etop);
        for (size_t g = 0; g < gen_top.cols(); ++g) {
            cd.verts.push_back(rep);
            QMatrix lift(M.dim, 1);
            for (size_t r = 0; r < M.dim; ++r) {
                FVal acc = F.zero();
                for (size_t k = 0; k < top.sec.cols(); ++k)
                    acc = F.add(acc, F.mul(top.sec.at(r, k), gen_top.at(k, g)));
                lift.at(r, 0) = acc;
            }
            // force e_rep * g = g so that P_rep -> M is defined on the nose
            lift = M.act[A.idempotent_index(rep)].mul(F, lift);
            images = images.hstack(lift);
        }
    }
    cd.gen_images = std::move(images);
    return cd;
}

// matrix of the cover map sum P_v -> M in expanded coordinates
QMatrix cover_matrix(const FModule& M, const CoverData& cd) {
    const BasedAlgebra& A = *M.alg;
    const Field& F = A.field();
    SumExpansion ex = expand_sum(A, cd.verts);
    QMatrix out(M.dim, ex.dim());
    for (size_t col = 0; col < ex.dim(); ++col) {
        auto [c, k] = ex.coords[col];
        int b = A.proj_basis(cd.verts[c])[k];
        for (size_t r = 0; r < M.dim; ++r) {
            FVal acc = F.zero();
            for (size_t s = 0; s < M.dim; ++s)
                acc = F.add(acc, F.mul(M.act[b].at(r, s), cd.gen_images.at(s, c)));
            out.at(r, col) = acc;
        }
    }
    return out;
}

} // namespace

FModule proj_module(const BasedAlgebra& A, int vertex) { return sum_module(A, {vertex}); }

FModule simple_module(const BasedAlgebra& A, int cls) {
    const Field& F = A.field();
    int rep = A.simple_classes()[cls][0];
    FModule P = proj_module(A, rep);
    QMatrix stack(P.dim, 0);
    for (size_t b = 0; b < A.dim(); ++b)
        if (A.basis((int)b).radical) stack = stack.hstack(P.act[b]);
    QMatrix radsp = col_space(F, stack);
    Quotient top = quotient_by_span(F, P.dim, radsp);
    FModule S{&A, top.proj.rows(), {}};
    for (size_t b = 0; b < A.dim(); ++b)
        S.act.push_back(top.proj.mul(F, P.act[b].mul(F, top.sec)));
    return S;
}

Resolution minimal_resolution(const BasedAlgebra& A, int cls, int max_steps) {
    const Field& F = A.field();
    Resolution res;
    FModule M = simple_module(A, cls);
    // embedding of the current syzygy into the previous cover (empty at start)
    QMatrix prev_embed;
    bool have_prev = false;
    for (int step = 0; step <= max_steps; ++step) {
        CoverData cd = projective_cover(M);
        if (have_prev) {
            // differential: images of the new generators inside the previous sum
            QMatrix img = prev_embed.mul(F, cd.gen_images);
            auto am = amat_from_images(A, cd.verts, res.comps.back(), img);
            if (!am) throw domain_error("resolution differential is not a based map");
            res.diffs.push_back(std::move(*am));
        }
        res.comps.push_back(cd.verts);
        QMatrix cm = cover_matrix(M, cd);
        QMatrix ker = kernel_basis(F, cm);
        if (ker.cols() == 0) {
            res.terminated = true;
            return res;
        }
        // next module: the kernel, with induced action
        FModule P = sum_module(A, cd.verts);
        FModule K{&A, ker.cols(), {}};
        for (size_t b = 0; b < A.dim(); ++b) {
            QMatrix moved = P.act[b].mul(F, ker);
            auto x = solve_linear(F, ker, moved);
            if (!x) throw domain_error("kernel is not a submodule");
            K.act.push_back(std::move(*x));
        }
        prev_embed = ker;
        have_prev = true;
        M = std::move(K);
    }
    res.terminated = false;
    return res;
}

} // namespace gentle
