#include "complexes.hpp"
#include <algorithm>
#include <map>
#include <random>

namespace gentle {

std::vector<int> ProjComplex::comps_at(int deg) const {
    if (deg < lo || deg > hi()) return {};
    return comps[deg - lo];
}

const AMat* ProjComplex::diff_at(int deg) const {
    if (deg < lo || deg >= hi()) return nullptr;
    return &diffs[deg - lo];
}

ProjComplex make_complex(const BasedAlgebra& A, int lo,
                         std::vector<std::vector<int>> comps, std::vector<AMat> diffs) {
    ProjComplex X{&A, lo, std::move(comps), std::move(diffs)};
    if (!X.comps.empty() && X.diffs.size() + 1 != X.comps.size())
        throw domain_error("complex needs one differential per adjacent degree pair");
    for (size_t k = 0; k + 1 < X.comps.size(); ++k) {
        if (X.diffs[k].col_v != X.comps[k] || X.diffs[k].row_v != X.comps[k + 1])
            throw domain_error("differential shape mismatch at degree " +
                               std::to_string(X.lo + (int)k));
        for (size_t q = 0; q < X.diffs[k].rows(); ++q)
            for (size_t p = 0; p < X.diffs[k].cols(); ++p)
                for (const auto& [b, c] : X.diffs[k].at(q, p))
                    if (A.basis(b).src != X.comps[k][p] || A.basis(b).tgt != X.comps[k + 1][q])
                        throw domain_error("differential entry outside its Hom space");
    }
    return normalized(std::move(X));
}

ProjComplex zero_complex(const BasedAlgebra& A) { return ProjComplex{&A, 0, {}, {}}; }

ProjComplex stalk_complex(const BasedAlgebra& A, int vertex, int deg) {
    return ProjComplex{&A, deg, {{vertex}}, {}};
}

ProjComplex normalized(ProjComplex X) {
    while (!X.comps.empty() && X.comps.front().empty()) {
        X.comps.erase(X.comps.begin());
        if (!X.diffs.empty()) X.diffs.erase(X.diffs.begin());
        ++X.lo;
    }
    while (!X.comps.empty() && X.comps.back().empty()) {
        X.comps.pop_back();
        if (!X.diffs.empty()) X.diffs.pop_back();
    }
    if (X.comps.empty()) { X.lo = 0; X.diffs.clear(); }
    return X;
}

ComplexCheck verify_complex(const ProjComplex& X) {
    const BasedAlgebra& A = *X.alg;
    ComplexCheck res;
    res.is_complex = true;
    res.is_minimal = true;
    for (size_t k = 0; k + 1 < X.diffs.size(); ++k) {
        AMat sq = amat_compose(A, X.diffs[k + 1], X.diffs[k]);
        if (!sq.is_zero(A)) {
            res.is_complex = false;
            res.issue = "d^2 != 0 at degree " + std::to_string(X.lo + (int)k);
        }
    }
    for (const auto& d : X.diffs)
        for (const auto& entry : d.e)
            if (!A.in_radical(entry)) res.is_minimal = false;
    return res;
}

ProjComplex shift_complex(const ProjComplex& X, int n) {
    ProjComplex Y = X;
    Y.lo = X.lo - n;
    if (n % 2 != 0)
        for (auto& d : Y.diffs) d = amat_scale(*X.alg, X.alg->field().from_long(-1), d);
    return Y;
}

ProjComplex direct_sum(const ProjComplex& X, const ProjComplex& Y) {
    if (X.empty()) return Y;
    if (Y.empty()) return X;
    const BasedAlgebra& A = *X.alg;
    int lo = std::min(X.lo, Y.lo), hi = std::max(X.hi(), Y.hi());
    std::vector<std::vector<int>> comps;
    std::vector<AMat> diffs;
    for (int d = lo; d <= hi; ++d) {
        std::vector<int> c = X.comps_at(d);
        for (int v : Y.comps_at(d)) c.push_back(v);
        comps.push_back(std::move(c));
    }
    for (int d = lo; d < hi; ++d) {
        AMat m(comps[d + 1 - lo], comps[d - lo]);
        auto put = [&](const AMat* part, size_t roff, size_t coff) {
            if (!part) return;
            for (size_t q = 0; q < part->rows(); ++q)
                for (size_t p = 0; p < part->cols(); ++p) m.at(roff + q, coff + p) = part->at(q, p);
        };
        put(X.diff_at(d), 0, 0);
        put(Y.diff_at(d), X.comps_at(d + 1).size(), X.comps_at(d).size());
        diffs.push_back(std::move(m));
    }
    return make_complex(A, lo, std::move(comps), std::move(diffs));
}

bool equal_complexes(const ProjComplex& X, const ProjComplex& Y) {
    if (X.empty() != Y.empty()) return false;
    if (X.empty()) return true;
    if (X.lo != Y.lo || X.comps != Y.comps) return false;
    for (size_t k = 0; k < X.diffs.size(); ++k)
        if (!amat_eq(*X.alg, X.diffs[k], Y.diffs[k])) return false;
    return true;
}

std::vector<size_t> CohomologyDims::totals() const {
    std::vector<size_t> t;
    for (const auto& row : dims) {
        size_t s = 0;
        for (size_t x : row) s += x;
        t.push_back(s);
    }
    return t;
}

CohomologyDims cohomology_dims(const ProjComplex& X) {
    const BasedAlgebra& A = *X.alg;
    const Field& F = A.field();
    CohomologyDims out;
    out.lo = X.lo;
    if (X.empty()) return out;
    // the expansion splits by the source vertex of each basis path, and the
    // differentials preserve that grading
    size_t V = A.num_vertices();
    std::vector<std::vector<std::vector<size_t>>> grading; // [deg][v] -> coord list
    std::vector<SumExpansion> exp;
    for (size_t k = 0; k < X.comps.size(); ++k) {
        exp.push_back(expand_sum(A, X.comps[k]));
        std::vector<std::vector<size_t>> g(V);
        for (size_t c = 0; c < exp[k].dim(); ++c) {
            auto [comp, off] = exp[k].coords[c];
            int b = A.proj_basis(X.comps[k][comp])[off];
            g[A.basis(b).src].push_back(c);
        }
        grading.push_back(std::move(g));
    }
    std::vector<QMatrix> dmats;
    for (const auto& d : X.diffs) dmats.push_back(amat_scalar_matrix(A, d));
    for (size_t k = 0; k < X.comps.size(); ++k) {
        std::vector<size_t> row(V, 0);
        for (size_t v = 0; v < V; ++v) {
            const auto& coords = grading[k][v];
            if (coords.empty()) continue;
            size_t ker;
            if (k + 1 < X.comps.size()) {
                QMatrix d(grading[k + 1][v].size(), coords.size());
                for (size_t i = 0; i < grading[k + 1][v].size(); ++i)
                    for (size_t j = 0; j < coords.size(); ++j)
                        d.at(i, j) = dmats[k].at(grading[k + 1][v][i], coords[j]);
                ker = coords.size() - rank(F, d);
            } else {
                ker = coords.size();
            }
            size_t im = 0;
            if (k > 0) {
                QMatrix d(coords.size(), grading[k - 1][v].size());
                for (size_t i = 0; i < coords.size(); ++i)
                    for (size_t j = 0; j < grading[k - 1][v].size(); ++j)
                        d.at(i, j) = dmats[k - 1].at(coords[i], grading[k - 1][v][j]);
                im = rank(F, d);
            }
            row[v] = ker - im;
        }
        out.dims.push_back(std::move(row));
    }
    return out;
}

namespace {

// inverse of an entry u in Hom(P_v, P_w), if the right-multiplication map is
// invertible: solve u * x = e_v with x in Hom(P_w, P_v), check x * u = e_w
std::optional<AlgElt> entry_inverse(const BasedAlgebra& A, const AlgElt& u, int v, int w) {
    if (A.is_zero(u) || A.in_radical(u)) return std::nullopt;
    const Field& F = A.field();
    const auto& hb = A.hom_basis(w, v);
    if (hb.empty()) return std::nullopt;
    // coordinates over the e_v A e_v hom space
    const auto& diag = A.hom_basis(v, v);
    QMatrix M(diag.size(), hb.size());
    for (size_t c = 0; c < hb.size(); ++c) {
        AlgElt prod = A.mul(u, A.elt(hb[c], F.one()));
        for (const auto& [b, x] : prod) {
            auto it = std::find(diag.begin(), diag.end(), b);
            if (it == diag.end()) return std::nullopt;
            M.at(it - diag.begin(), c) = x;
        }
    }
    QMatrix rhs(diag.size(), 1);
    for (size_t r = 0; r < diag.size(); ++r)
        if (diag[r] == A.idempotent_index(v)) rhs.at(r, 0) = F.one();
    auto sol = solve_linear(F, M, rhs);
    if (!sol) return std::nullopt;
    AlgElt x;
    for (size_t c = 0; c < hb.size(); ++c)
        if (!Field::is_zero(sol->at(c, 0))) x.push_back({hb[c], sol->at(c, 0)});
    std::sort(x.begin(), x.end());
    if (!A.eq(A.mul(x, u), A.elt(A.idempotent_index(w), F.one()))) return std::nullopt;
    return x;
}

} // namespace

ProjComplex minimize(const ProjComplex& X0) {
    const BasedAlgebra& A = *X0.alg;
    const Field& F = A.field();
    ProjComplex X = normalized(X0);
    for (;;) {
        // find a differential entry invertible in the algebra
        int fk = -1;
        size_t fq = 0, fp = 0;
        AlgElt inv;
        for (size_t k = 0; k < X.diffs.size() && fk < 0; ++k)
            for (size_t q = 0; q < X.diffs[k].rows() && fk < 0; ++q)
                for (size_t p = 0; p < X.diffs[k].cols() && fk < 0; ++p) {
                    auto iv = entry_inverse(A, X.diffs[k].at(q, p), X.diffs[k].col_v[p],
                                            X.diffs[k].row_v[q]);
                    if (iv) { fk = (int)k; fq = q; fp = p; inv = *iv; }
                }
        if (fk < 0) return X;
        AMat& d = X.diffs[fk];
        // clear the pivot column (entries (s, fp), s != fq): row operations on
        // X^{k+1}, which also touch the next differential's columns
        for (size_t s = 0; s < d.rows(); ++s) {
            if (s == fq) continue;
            AlgElt beta = d.at(s, fp);
            if (A.is_zero(beta)) continue;
            AlgElt ab = A.mul(inv, beta); // alpha^{-1} beta
            AlgElt coef = A.scale(F.from_long(-1), ab);
            for (size_t p = 0; p < d.cols(); ++p)
                d.at(s, p) = A.add(d.at(s, p), A.mul(d.at(fq, p), coef));
            if (fk + 1 < (int)X.diffs.size()) {
                AMat& nx = X.diffs[fk + 1];
                // inverse op on the source side: column fq gains g^{-1}(s, fq) * column s
                for (size_t t = 0; t < nx.rows(); ++t)
                    nx.at(t, fq) = A.add(nx.at(t, fq), A.mul(ab, nx.at(t, s)));
            }
        }
        // clear the pivot row (entries (fq, p''), p'' != fp): column ops on X^k
        for (size_t p2 = 0; p2 < d.cols(); ++p2) {
            if (p2 == fp) continue;
            AlgElt nu = d.at(fq, p2);
            if (A.is_zero(nu)) continue;
            AlgElt coef = A.scale(F.from_long(-1), A.mul(nu, inv)); // -nu alpha^{-1}
            for (size_t s = 0; s < d.rows(); ++s)
                d.at(s, p2) = A.add(d.at(s, p2), A.mul(coef, d.at(s, fp)));
            if (fk > 0) {
                AMat& pv = X.diffs[fk - 1];
                // h = id + E(fp <- p2) * (nu alpha^{-1}) acts on rows of the previous diff
                AlgElt hcoef = A.mul(nu, inv);
                for (size_t u = 0; u < pv.cols(); ++u)
                    pv.at(fp, u) = A.add(pv.at(fp, u), A.mul(pv.at(p2, u), hcoef));
            }
        }
        // adjacent differentials must now avoid the removed pair (forced by d^2 = 0)
        if (fk + 1 < (int)X.diffs.size())
            for (size_t t = 0; t < X.diffs[fk + 1].rows(); ++t)
                if (!A.is_zero(X.diffs[fk + 1].at(t, fq)))
                    throw domain_error("minimize: residue after contraction (d^2 != 0?)");
        if (fk > 0)
            for (size_t u = 0; u < X.diffs[fk - 1].cols(); ++u)
                if (!A.is_zero(X.diffs[fk - 1].at(fp, u)))
                    throw domain_error("minimize: residue after contraction (d^2 != 0?)");
        // drop component fp in degree lo+fk and fq in degree lo+fk+1
        auto drop_col = [&](AMat& m, size_t c) {
            AMat n(m.row_v, {});
            n.col_v = m.col_v;
            n.col_v.erase(n.col_v.begin() + c);
            n.e.clear();
            for (size_t q = 0; q < m.rows(); ++q)
                for (size_t p = 0; p < m.cols(); ++p)
                    if (p != c) n.e.push_back(m.at(q, p));
            m = std::move(n);
        };
        auto drop_row = [&](AMat& m, size_t r) {
            AMat n({}, m.col_v);
            n.row_v = m.row_v;
            n.row_v.erase(n.row_v.begin() + r);
            n.e.clear();
            for (size_t q = 0; q < m.rows(); ++q)
                if (q != r)
                    for (size_t p = 0; p < m.cols(); ++p) n.e.push_back(m.at(q, p));
            m = std::move(n);
        };
        drop_col(X.diffs[fk], fp);
        drop_row(X.diffs[fk], fq);
        X.comps[fk].erase(X.comps[fk].begin() + fp);
        X.comps[fk + 1].erase(X.comps[fk + 1].begin() + fq);
        if (fk > 0) drop_row(X.diffs[fk - 1], fp);
        if (fk + 1 < (int)X.diffs.size()) drop_col(X.diffs[fk + 1], fq);
        X = normalized(std::move(X));
    }
}

const AMat* ChainMap::at(int deg) const {
    if (deg < lo || deg >= lo + (int)f.size()) return nullptr;
    return &f[deg - lo];
}

namespace {

struct Slot {
    int k;    // degree offset from window lo
    size_t q, p;
    int b;    // hom basis element
};

struct MapSpace {
    int lo = 0, n_deg = 0;
    std::vector<Slot> slots;
    // per degree: component lists of X and Y
    std::vector<std::vector<int>> xc, yc;
};

MapSpace map_space(const ProjComplex& X, const ProjComplex& Y) {
    const BasedAlgebra& A = *X.alg;
    MapSpace S;
    S.lo = std::min(X.empty() ? 0 : X.lo, Y.empty() ? 0 : Y.lo);
    int hi = std::max(X.empty() ? -1 : X.hi(), Y.empty() ? -1 : Y.hi());
    S.n_deg = std::max(0, hi - S.lo + 1);
    for (int d = S.lo; d <= hi; ++d) {
        S.xc.push_back(X.comps_at(d));
        S.yc.push_back(Y.comps_at(d));
    }
    for (int k = 0; k < S.n_deg; ++k)
        for (size_t q = 0; q < S.yc[k].size(); ++q)
            for (size_t p = 0; p < S.xc[k].size(); ++p)
                for (int b : A.hom_basis(S.xc[k][p], S.yc[k][q]))
                    S.slots.push_back({k, q, p, b});
    return S;
}

ChainMap from_slots(const BasedAlgebra& A, const MapSpace& S, const QMatrix& v, size_t col) {
    ChainMap f;
    f.lo = S.lo;
    for (int k = 0; k < S.n_deg; ++k) f.f.push_back(AMat(S.yc[k], S.xc[k]));
    for (size_t i = 0; i < S.slots.size(); ++i) {
        const FVal& c = v.at(i, col);
        if (Field::is_zero(c)) continue;
        const Slot& s = S.slots[i];
        f.f[s.k].at(s.q, s.p) = A.add(f.f[s.k].at(s.q, s.p), A.elt(s.b, c));
    }
    return f;
}

QMatrix to_slots(const MapSpace& S, const ChainMap& f) {
    QMatrix v(S.slots.size(), 1);
    for (size_t i = 0; i < S.slots.size(); ++i) {
        const Slot& s = S.slots[i];
        const AMat* m = f.at(S.lo + s.k);
        if (!m) continue;
        for (const auto& [b, c] : m->at(s.q, s.p))
            if (b == s.b) v.at(i, 0) = c;
    }
    return v;
}

} // namespace

std::vector<ChainMap> chain_map_basis(const ProjComplex& X, const ProjComplex& Y) {
    const BasedAlgebra& A = *X.alg;
    const Field& F = A.field();
    MapSpace S = map_space(X, Y);
    if (S.slots.empty()) return {};

    // gather equation rows: for k in [0, n_deg-2]: f^{k+1} d_X^k - d_Y^k f^k = 0,
    // entry (s, p) in Hom(X^k_p, Y^{k+1}_s)
    std::map<std::tuple<int, size_t, size_t, int>, size_t> rows;
    auto row_of = [&](int k, size_t s, size_t p, int b) {
        auto key = std::make_tuple(k, s, p, b);
        auto it = rows.find(key);
        if (it != rows.end()) return it->second;
        size_t id = rows.size();
        rows[key] = id;
        return id;
    };
    // build sparse columns
    std::vector<std::vector<std::pair<size_t, FVal>>> cols(S.slots.size());
    for (size_t u = 0; u < S.slots.size(); ++u) {
        const Slot& sl = S.slots[u];
        AlgElt h = A.elt(sl.b, F.one());
        // as f^{j} in equation j-1: entries (sl.q, p) get d_X^{j-1}(sl.p, p) * h
        if (sl.k > 0) {
            const AMat* dX = X.diff_at(S.lo + sl.k - 1);
            if (dX) {
                // dX rows/cols are the true complex components; identify by degree
                for (size_t p = 0; p < dX->cols(); ++p) {
                    AlgElt term = A.mul(dX->at(sl.p, p), h);
                    for (const auto& [b, c] : term)
                        cols[u].push_back({row_of(sl.k - 1, sl.q, p, b), c});
                }
            }
        }
        // as f^{j} in equation j: entries (s, sl.p) get -h * d_Y^{j}(s, sl.q)
        if (sl.k + 1 < S.n_deg) {
            const AMat* dY = Y.diff_at(S.lo + sl.k);
            if (dY) {
                for (size_t s = 0; s < dY->rows(); ++s) {
                    AlgElt term = A.scale(F.from_long(-1), A.mul(h, dY->at(s, sl.q)));
                    for (const auto& [b, c] : term)
                        cols[u].push_back({row_of(sl.k, s, sl.p, b), c});
                }
            }
        }
    }
    QMatrix M(rows.size(), S.slots.size());
    for (size_t u = 0; u < cols.size(); ++u)
        for (const auto& [r, c] : cols[u]) M.at(r, u) = F.add(M.at(r, u), c);
    QMatrix K = kernel_basis(F, M);
    std::vector<ChainMap> out;
    for (size_t c = 0; c < K.cols(); ++c) out.push_back(from_slots(A, S, K, c));
    return out;
}

ChainMap compose_chain_maps(const ProjComplex& X, const ChainMap& g, const ChainMap& f) {
    const BasedAlgebra& A = *X.alg;
    ChainMap out;
    out.lo = f.lo;
    for (size_t k = 0; k < f.f.size(); ++k) {
        const AMat* gk = g.at(f.lo + (int)k);
        if (gk)
            out.f.push_back(amat_compose(A, *gk, f.f[k]));
        else
            out.f.push_back(AMat(f.f[k].row_v, f.f[k].col_v));
    }
    return out;
}

ChainMap identity_chain_map(const ProjComplex& X) {
    ChainMap id;
    id.lo = X.lo;
    for (const auto& c : X.comps) id.f.push_back(amat_identity(*X.alg, c));
    return id;
}

namespace {

// slot vectors of all maps dh + hd with h running over degree -1 maps
std::vector<QMatrix> homotopy_span(const ProjComplex& X, const ProjComplex& Y,
                                   const MapSpace& S) {
    const BasedAlgebra& A = *X.alg;
    const Field& F = A.field();
    std::vector<QMatrix> out;
    for (int k = 0; k < S.n_deg; ++k) {
        // h: X^{lo+k} -> Y^{lo+k-1}
        if (k == 0) continue;
        const auto& xk = S.xc[k];
        const auto& ylow = S.yc[k - 1];
        for (size_t q = 0; q < ylow.size(); ++q)
            for (size_t p = 0; p < xk.size(); ++p)
                for (int b : A.hom_basis(xk[p], ylow[q])) {
                    ChainMap img;
                    img.lo = S.lo;
                    for (int j = 0; j < S.n_deg; ++j) img.f.push_back(AMat(S.yc[j], S.xc[j]));
                    AlgElt h = A.elt(b, F.one());
                    // (d_Y h)^k: entry (s, p) = h * d_Y(s, q)
                    const AMat* dY = Y.diff_at(S.lo + k - 1);
                    if (dY)
                        for (size_t s = 0; s < dY->rows(); ++s)
                            img.f[k].at(s, p) =
                                A.add(img.f[k].at(s, p), A.mul(h, dY->at(s, q)));
                    // (h d_X)^{k-1}: entry (q, p') = d_X(p, p') * h
                    const AMat* dX = X.diff_at(S.lo + k - 1);
                    if (dX)
                        for (size_t p2 = 0; p2 < dX->cols(); ++p2)
                            img.f[k - 1].at(q, p2) =
                                A.add(img.f[k - 1].at(q, p2), A.mul(dX->at(p, p2), h));
                    out.push_back(to_slots(S, img));
                }
    }
    return out;
}

} // namespace

HomHomotopy hom_homotopy(const ProjComplex& X, const ProjComplex& Y) {
    const BasedAlgebra& A = *X.alg;
    const Field& F = A.field();
    MapSpace S = map_space(X, Y);
    std::vector<ChainMap> cmaps = chain_map_basis(X, Y);
    HomHomotopy out;
    if (cmaps.empty()) return out;
    QMatrix C(S.slots.size(), cmaps.size());
    for (size_t c = 0; c < cmaps.size(); ++c) {
        QMatrix v = to_slots(S, cmaps[c]);
        for (size_t r = 0; r < S.slots.size(); ++r) C.at(r, c) = v.at(r, 0);
    }
    std::vector<QMatrix> hot = homotopy_span(X, Y, S);
    // express homotopies in chain-map coordinates and quotient
    QMatrix N(cmaps.size(), hot.size());
    for (size_t c = 0; c < hot.size(); ++c) {
        auto x = solve_linear(F, C, hot[c]);
        if (!x) throw domain_error("null-homotopic map that is not a chain map");
        for (size_t r = 0; r < cmaps.size(); ++r) N.at(r, c) = x->at(r, 0);
    }
    Echelon e = echelon_form(F, N.transposed());
    std::vector<bool> inside(cmaps.size(), false);
    for (size_t p : e.pivots) inside[p] = true;
    for (size_t c = 0; c < cmaps.size(); ++c)
        if (!inside[c]) out.basis.push_back(cmaps[c]);
    out.dimension = out.basis.size();
    return out;
}

EndAlgebra end_homotopy_algebra(const ProjComplex& X) {
    const BasedAlgebra& A = *X.alg;
    const Field& F = A.field();
    MapSpace S = map_space(X, X);
    std::vector<ChainMap> cmaps = chain_map_basis(X, X);
    size_t n = cmaps.size();
    if (n == 0) {
        // zero complex: the zero algebra is not unital, treat as k
        std::map<std::pair<size_t, size_t>, SCA::Elem> t;
        t[{0, 0}] = {F.one()};
        return EndAlgebra{SCA(F, 1, std::move(t), {F.one()}, false), {}};
    }
    QMatrix C(S.slots.size(), n);
    for (size_t c = 0; c < n; ++c) {
        QMatrix v = to_slots(S, cmaps[c]);
        for (size_t r = 0; r < S.slots.size(); ++r) C.at(r, c) = v.at(r, 0);
    }
    std::vector<QMatrix> hot = homotopy_span(X, X, S);
    QMatrix N(n, hot.size());
    for (size_t c = 0; c < hot.size(); ++c) {
        auto x = solve_linear(F, C, hot[c]);
        if (!x) throw domain_error("null-homotopic map that is not a chain map");
        for (size_t r = 0; r < n; ++r) N.at(r, c) = x->at(r, 0);
    }
    // quotient coordinates: complement of the homotopy span inside the
    // chain-map coordinate space
    Echelon e = echelon_form(F, N.transposed());
    std::vector<bool> inside(n, false);
    for (size_t p : e.pivots) inside[p] = true;
    std::vector<size_t> keep;
    for (size_t c = 0; c < n; ++c)
        if (!inside[c]) keep.push_back(c);
    size_t m = keep.size();
    QMatrix proj(m, n);
    for (size_t k = 0; k < m; ++k) proj.at(k, keep[k]) = F.one();
    for (size_t r = 0; r < e.pivots.size(); ++r)
        for (size_t k = 0; k < m; ++k) proj.at(k, e.pivots[r]) = F.neg(e.rref.at(r, keep[k]));

    auto express = [&](const ChainMap& f) {
        QMatrix v = to_slots(S, f);
        auto x = solve_linear(F, C, v);
        if (!x) throw domain_error("endomorphism composite is not a chain map");
        SCA::Elem out(m, F.zero());
        for (size_t k = 0; k < m; ++k)
            for (size_t r = 0; r < n; ++r)
                if (!Field::is_zero(x->at(r, 0)))
                    out[k] = F.add(out[k], F.mul(proj.at(k, r), x->at(r, 0)));
        return out;
    };

    std::vector<ChainMap> reps;
    for (size_t k = 0; k < m; ++k) reps.push_back(cmaps[keep[k]]);
    // product e_i e_j := reps[i] composed after reps[j]
    std::map<std::pair<size_t, size_t>, SCA::Elem> table;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            SCA::Elem p = express(compose_chain_maps(X, reps[i], reps[j]));
            bool nz = false;
            for (const auto& x : p) nz = nz || !Field::is_zero(x);
            if (nz) table[{i, j}] = std::move(p);
        }
    SCA alg(F, m, std::move(table), express(identity_chain_map(X)), false);
    return EndAlgebra{std::move(alg), std::move(reps)};
}

ChainMap EndAlgebra::realize(const ProjComplex& X, const SCA::Elem& e) const {
    const BasedAlgebra& A = *X.alg;
    ChainMap out = identity_chain_map(X);
    for (auto& m : out.f)
        for (auto& x : m.e) x = {};
    for (size_t i = 0; i < reps.size(); ++i) {
        if (Field::is_zero(e[i])) continue;
        for (size_t k = 0; k < out.f.size(); ++k) {
            const AMat* fi = reps[i].at(out.lo + (int)k);
            if (fi) out.f[k] = amat_add(A, out.f[k], amat_scale(A, e[i], *fi));
        }
    }
    return out;
}

namespace {

bool chain_map_degreewise_invertible(const ProjComplex& X, const ProjComplex& Y,
                                     const ChainMap& f) {
    const BasedAlgebra& A = *X.alg;
    const Field& F = A.field();
    int lo = std::min(X.empty() ? 0 : X.lo, Y.empty() ? 0 : Y.lo);
    int hi = std::max(X.empty() ? -1 : X.hi(), Y.empty() ? -1 : Y.hi());
    for (int d = lo; d <= hi; ++d) {
        auto xc = X.comps_at(d);
        auto yc = Y.comps_at(d);
        if (xc.empty() && yc.empty()) continue;
        const AMat* m = f.at(d);
        if (!m) return false;
        QMatrix s = amat_scalar_matrix(A, *m);
        if (s.rows() != s.cols() || rank(F, s) != s.rows()) return false;
    }
    return true;
}

std::vector<std::multiset<int>> degree_profile(const ProjComplex& X) {
    std::vector<std::multiset<int>> out;
    for (const auto& c : X.comps) out.push_back({c.begin(), c.end()});
    return out;
}

} // namespace

std::vector<ProjComplex> decompose(const ProjComplex& X0, uint64_t seed) {
    const BasedAlgebra& A = *X0.alg;
    const Field& F = A.field();
    ProjComplex X = minimize(X0);
    if (X.empty()) return {};
    EndAlgebra E = end_homotopy_algebra(X);
    IdempotentResult ir = find_nontrivial_idempotent(E.algebra, seed);
    if (ir.kind == IdempotentResult::Local) return {X};
    if (ir.kind == IdempotentResult::SplitFailure)
        throw domain_error("decompose: split failure - " + ir.note);

    // lift to a strict idempotent chain map by the cubic Newton step
    ChainMap e = E.realize(X, ir.idempotent);
    ChainMap id = identity_chain_map(X);
    auto cm_eq = [&](const ChainMap& a, const ChainMap& b) {
        for (size_t k = 0; k < a.f.size(); ++k)
            if (!amat_eq(A, a.f[k], b.f[k])) return false;
        return true;
    };
    for (int it = 0; it < 64; ++it) {
        ChainMap e2 = compose_chain_maps(X, e, e);
        if (cm_eq(e2, e)) break;
        ChainMap e3 = compose_chain_maps(X, e2, e);
        ChainMap r = e2;
        for (size_t k = 0; k < r.f.size(); ++k)
            r.f[k] = amat_sub(A, amat_scale(A, F.from_long(3), e2.f[k]),
                              amat_scale(A, F.from_long(2), e3.f[k]));
        e = std::move(r);
    }
    if (!cm_eq(compose_chain_maps(X, e, e), e))
        throw domain_error("decompose: idempotent chain map lift failed");

    // per degree, conjugate e to a coordinate idempotent
    std::vector<std::vector<size_t>> part1, part2;
    ProjComplex Y = X;
    std::vector<AMat> gs; // accumulated changes of basis per degree
    for (size_t k = 0; k < X.comps.size(); ++k) {
        const std::vector<int>& verts = X.comps[k];
        size_t n = verts.size();
        AMat ek = e.f[k + (X.lo - e.lo)];
        // scalar part, vertexwise
        QMatrix Sm(n, n);
        for (size_t q = 0; q < n; ++q)
            for (size_t p = 0; p < n; ++p)
                if (verts[q] == verts[p]) Sm.at(q, p) = A.scalar_part(ek.at(q, p), verts[p]);
        // basis of im(S) then ker(S), assembled vertex-block-wise to stay
        // vertex-preserving
        QMatrix U(n, n);
        size_t ucol = 0;
        std::vector<bool> one_block(n, false);
        std::map<int, std::vector<size_t>> by_vertex;
        for (size_t i = 0; i < n; ++i) by_vertex[verts[i]].push_back(i);
        std::vector<int> new_verts;
        for (auto& [v, idxs] : by_vertex) {
            QMatrix sub(idxs.size(), idxs.size());
            for (size_t a = 0; a < idxs.size(); ++a)
                for (size_t b = 0; b < idxs.size(); ++b) sub.at(a, b) = Sm.at(idxs[a], idxs[b]);
            // columns of im and ker
            Echelon im = echelon_form(F, sub.transposed());
            QMatrix kerb = kernel_basis(F, sub);
            for (size_t r = 0; r < im.rank(); ++r) {
                for (size_t a = 0; a < idxs.size(); ++a) U.at(idxs[a], ucol) = im.rref.at(r, a);
                one_block[ucol] = true;
                new_verts.push_back(v);
                ++ucol;
            }
            for (size_t c = 0; c < kerb.cols(); ++c) {
                for (size_t a = 0; a < idxs.size(); ++a) U.at(idxs[a], ucol) = kerb.at(a, c);
                new_verts.push_back(v);
                ++ucol;
            }
        }
        if (ucol != n) throw domain_error("decompose: idempotent scalar part not split");
        auto Uinv = inverse(F, U);
        if (!Uinv) throw domain_error("decompose: singular basis change");
        // T = U^{-1} reorders the summands; build as a based matrix with
        // scalar * idempotent entries (vertex-preserving by construction)
        AMat T(new_verts, verts), Ti(verts, new_verts);
        for (size_t q = 0; q < n; ++q)
            for (size_t p = 0; p < n; ++p) {
                if (new_verts[q] == verts[p] && !Field::is_zero(Uinv->at(q, p)))
                    T.at(q, p) = A.elt(A.idempotent_index(verts[p]), Uinv->at(q, p));
                if (verts[q] == new_verts[p] && !Field::is_zero(U.at(q, p)))
                    Ti.at(q, p) = A.elt(A.idempotent_index(new_verts[p]), U.at(q, p));
            }
        // e' = T e T^{-1}; strictly idempotent with scalar part diag(1,0)
        AMat ep = amat_compose(A, T, amat_compose(A, ek, Ti));
        AMat Ed = AMat(new_verts, new_verts);
        for (size_t i = 0; i < n; ++i)
            if (one_block[i]) Ed.at(i, i) = A.elt(A.idempotent_index(new_verts[i]), F.one());
        AMat idm = amat_identity(A, new_verts);
        // u = Ed e' + (1 - Ed)(1 - e'), invertible, u e' u^{-1} = Ed
        AMat u = amat_add(A, amat_compose(A, Ed, ep),
                          amat_compose(A, amat_sub(A, idm, Ed), amat_sub(A, idm, ep)));
        AMat g = amat_compose(A, u, T);
        gs.push_back(g);
        Y.comps[k] = new_verts;
        std::vector<size_t> p1, p2;
        for (size_t i = 0; i < n; ++i) (one_block[i] ? p1 : p2).push_back(i);
        part1.push_back(p1);
        part2.push_back(p2);
    }
    // new differentials d' = g^{k+1} d g^{k,-1}
    for (size_t k = 0; k + 1 < X.comps.size(); ++k) {
        auto gi = amat_inverse(A, gs[k]);
        if (!gi) throw domain_error("decompose: basis change not invertible");
        Y.diffs[k] = amat_compose(A, gs[k + 1], amat_compose(A, X.diffs[k], *gi));
    }
    // verify the split and carve out the two subcomplexes
    auto carve = [&](const std::vector<std::vector<size_t>>& sel) {
        std::vector<std::vector<int>> comps;
        std::vector<AMat> diffs;
        for (size_t k = 0; k < Y.comps.size(); ++k) {
            std::vector<int> c;
            for (size_t i : sel[k]) c.push_back(Y.comps[k][i]);
            comps.push_back(std::move(c));
        }
        for (size_t k = 0; k + 1 < Y.comps.size(); ++k) {
            AMat m(comps[k + 1], comps[k]);
            for (size_t q = 0; q < sel[k + 1].size(); ++q)
                for (size_t p = 0; p < sel[k].size(); ++p)
                    m.at(q, p) = Y.diffs[k].at(sel[k + 1][q], sel[k][p]);
            diffs.push_back(std::move(m));
        }
        return make_complex(A, Y.lo, std::move(comps), std::move(diffs));
    };
    // cross terms must vanish
    for (size_t k = 0; k + 1 < Y.comps.size(); ++k)
        for (size_t q = 0; q < Y.comps[k + 1].size(); ++q)
            for (size_t p = 0; p < Y.comps[k].size(); ++p) {
                bool q1 = std::find(part1[k + 1].begin(), part1[k + 1].end(), q) != part1[k + 1].end();
                bool p1 = std::find(part1[k].begin(), part1[k].end(), p) != part1[k].end();
                if (q1 != p1 && !A.is_zero(Y.diffs[k].at(q, p)))
                    throw domain_error("decompose: differential does not respect the split");
            }
    ProjComplex X1 = carve(part1), X2 = carve(part2);
    if (X1.empty() || X2.empty())
        throw domain_error("decompose: idempotent produced a trivial split");
    std::vector<ProjComplex> out = decompose(X1, seed + 1);
    for (auto& s : decompose(X2, seed + 1)) out.push_back(std::move(s));
    return out;
}

bool is_homotopy_iso(const ProjComplex& X0, const ProjComplex& Y0, uint64_t seed) {
    const BasedAlgebra& A = *X0.alg;
    const Field& F = A.field();
    ProjComplex X = minimize(X0), Y = minimize(Y0);
    if (X.empty() || Y.empty()) return X.empty() && Y.empty();
    if (X.lo != Y.lo || degree_profile(X) != degree_profile(Y)) return false;
    std::vector<ChainMap> basis = chain_map_basis(X, Y);
    for (const auto& f : basis)
        if (chain_map_degreewise_invertible(X, Y, f)) return true;
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
    for (int t = 0; t < 8; ++t) {
        ChainMap f;
        f.lo = basis.empty() ? X.lo : basis[0].lo;
        bool first = true;
        for (const auto& g : basis) {
            FVal c = F.from_long(static_cast<long>(rng() % 9) - 4);
            if (first) {
                f = g;
                for (auto& m : f.f) m = amat_scale(A, c, m);
                first = false;
            } else {
                for (size_t k = 0; k < f.f.size(); ++k)
                    f.f[k] = amat_add(A, f.f[k], amat_scale(A, c, g.f[k]));
            }
        }
        if (!first && chain_map_degreewise_invertible(X, Y, f)) return true;
    }
    // exact fallback through the Krull-Schmidt decompositions
    std::vector<ProjComplex> xs = decompose(X, seed), ys = decompose(Y, seed);
    if (xs.size() != ys.size()) return false;
    std::vector<bool> used(ys.size(), false);
    auto indec_iso = [&](const ProjComplex& U, const ProjComplex& V) {
        if (U.lo != V.lo || degree_profile(U) != degree_profile(V)) return false;
        for (const auto& f : chain_map_basis(U, V))
            if (chain_map_degreewise_invertible(U, V, f)) return true;
        return false;
    };
    for (const auto& u : xs) {
        bool matched = false;
        for (size_t j = 0; j < ys.size() && !matched; ++j) {
            if (used[j]) continue;
            if (indec_iso(u, ys[j])) { used[j] = true; matched = true; }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace gentle
