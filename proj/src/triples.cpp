#include "triples.hpp"
#include <algorithm>

namespace gentle {

int stripe_rank(const StripeLabel& l, int j, int m) {
    // The weight order follows the hierarchy of morphisms between the
    // two-term summands: within the source-end labels (partner in degree
    // r+1) maps lower the partner, so those weights DESCEND in the partner;
    // then the stalk, then the target-end labels ascending as the partner
    // descends.  (The displayed total order in the source misprints the
    // r+1 segment: taking it ascending admits row additions with no
    // underlying automorphism, which provably changes the homotopy class.)
    if (l.dir == +1) {
        if (l.partner < 1 || l.partner >= j) throw domain_error("bad stripe label");
        return j - 1 - l.partner;
    }
    if (l.dir != -1) throw domain_error("bad stripe direction");
    if (l.partner == m + 1) return j - 1;
    if (l.partner <= j || l.partner > m) throw domain_error("bad stripe label");
    return j + (m - l.partner);
}

namespace {

void require_chain_case(const AlgebraContext& ctx, const char* what) {
    for (const auto& p : ctx.hpos)
        if (p.sign != 0)
            throw domain_error(std::string(what) +
                               ": only gentle (chain) datums are supported here");
}

} // namespace

SplitY split_h_complex(const AlgebraContext& ctx, const ProjComplex& Y) {
    require_chain_case(ctx, "split_h_complex");
    const BasedAlgebra& H = *ctx.H;
    const Field& F = ctx.F;
    {
        auto chk = verify_complex(Y);
        if (!chk.is_complex || !chk.is_minimal)
            throw domain_error("split_h_complex needs a minimal complex");
    }
    SplitY S;
    S.lo = Y.lo;
    size_t nd = Y.comps.size();
    S.occ.assign(nd, {});
    for (size_t k = 0; k < nd; ++k) {
        std::vector<int> lev, ch;
        for (int v : Y.comps[k]) {
            lev.push_back(ctx.hpos[v].j);
            ch.push_back(ctx.hpos[v].i);
        }
        S.levels.push_back(std::move(lev));
        S.chains.push_back(std::move(ch));
        S.U.push_back(QMatrix::identity(F, Y.comps[k].size()));
        S.occ[k].assign(Y.comps[k].size(), {-1, -1});
    }
    // scalar differential matrices: coefficient of the (unique) morphism
    std::vector<QMatrix> D;
    for (size_t k = 0; k + 1 < nd; ++k) {
        QMatrix d(Y.comps[k + 1].size(), Y.comps[k].size());
        for (size_t q = 0; q < Y.comps[k + 1].size(); ++q)
            for (size_t p = 0; p < Y.comps[k].size(); ++p) {
                const AlgElt& e = Y.diffs[k].at(q, p);
                if (H.is_zero(e)) continue;
                if (e.size() != 1) throw domain_error("hereditary entry not a single path");
                d.at(q, p) = e[0].second;
            }
        D.push_back(std::move(d));
    }

    auto consumed = [&](size_t k, size_t pos) { return S.occ[k][pos].first >= 0; };
    for (;;) {
        // deterministic pivot: smallest degree, then max target level, min
        // source level, then lexicographic position
        int fk = -1;
        size_t fq = 0, fp = 0;
        for (size_t k = 0; k + 1 < nd && fk < 0; ++k) {
            int best_b = -1, best_a = 0;
            for (size_t q = 0; q < D[k].rows(); ++q)
                for (size_t p = 0; p < D[k].cols(); ++p) {
                    if (consumed(k, p) || consumed(k + 1, q)) continue;
                    if (Field::is_zero(D[k].at(q, p))) continue;
                    int b = S.levels[k + 1][q], a = S.levels[k][p];
                    bool better = fk < 0 || b > best_b || (b == best_b && a < best_a);
                    if (better) {
                        fk = (int)k; fq = q; fp = p; best_b = b; best_a = a;
                    }
                }
        }
        if (fk < 0) break;
        QMatrix& d = D[fk];
        // normalize the pivot to 1 (scale row fq of degree fk+1)
        FVal lam = d.at(fq, fp);
        if (!Field::eq(lam, F.one())) {
            FVal li = F.inv(lam);
            for (size_t p = 0; p < d.cols(); ++p) d.at(fq, p) = F.mul(li, d.at(fq, p));
            for (size_t j = 0; j < S.U[fk + 1].cols(); ++j)
                S.U[fk + 1].at(fq, j) = F.mul(li, S.U[fk + 1].at(fq, j));
            if (fk + 2 < (int)nd)
                for (size_t t = 0; t < D[fk + 1].rows(); ++t)
                    D[fk + 1].at(t, fq) = F.mul(lam, D[fk + 1].at(t, fq));
        }
        // clear the pivot column
        for (size_t s = 0; s < d.rows(); ++s) {
            if (s == fq || Field::is_zero(d.at(s, fp))) continue;
            FVal mu = d.at(s, fp);
            for (size_t p = 0; p < d.cols(); ++p)
                d.at(s, p) = F.sub(d.at(s, p), F.mul(mu, d.at(fq, p)));
            for (size_t j = 0; j < S.U[fk + 1].cols(); ++j)
                S.U[fk + 1].at(s, j) =
                    F.sub(S.U[fk + 1].at(s, j), F.mul(mu, S.U[fk + 1].at(fq, j)));
            if (fk + 2 < (int)nd)
                for (size_t t = 0; t < D[fk + 1].rows(); ++t)
                    D[fk + 1].at(t, fq) = F.add(D[fk + 1].at(t, fq), F.mul(mu, D[fk + 1].at(t, s)));
        }
        // clear the pivot row
        for (size_t p2 = 0; p2 < d.cols(); ++p2) {
            if (p2 == fp || Field::is_zero(d.at(fq, p2))) continue;
            FVal nu = d.at(fq, p2);
            for (size_t s = 0; s < d.rows(); ++s)
                d.at(s, p2) = F.sub(d.at(s, p2), F.mul(nu, d.at(s, fp)));
            for (size_t u = 0; u < S.U[fk].cols(); ++u)
                S.U[fk].at(fp, u) = F.add(S.U[fk].at(fp, u), F.mul(nu, S.U[fk].at(p2, u)));
            if (fk > 0)
                for (size_t u = 0; u < D[fk - 1].cols(); ++u)
                    D[fk - 1].at(fp, u) =
                        F.add(D[fk - 1].at(fp, u), F.mul(nu, D[fk - 1].at(p2, u)));
        }
        // adjacent differentials avoid the split pair (forced by d^2 = 0)
        if (fk + 2 < (int)nd)
            for (size_t t = 0; t < D[fk + 1].rows(); ++t)
                if (!Field::is_zero(D[fk + 1].at(t, fq)))
                    throw domain_error("split: d^2 residue on the source side");
        if (fk > 0)
            for (size_t u = 0; u < D[fk - 1].cols(); ++u)
                if (!Field::is_zero(D[fk - 1].at(fp, u)))
                    throw domain_error("split: d^2 residue on the target side");
        int sid = (int)S.summands.size();
        S.summands.push_back(
            {S.chains[fk][fp], S.levels[fk][fp], S.levels[fk + 1][fq], S.lo + fk + 1});
        S.occ[fk][fp] = {sid, 1};
        S.occ[fk + 1][fq] = {sid, 0};

    }
    // leftovers are stalks
    for (size_t k = 0; k < nd; ++k)
        for (size_t pos = 0; pos < S.occ[k].size(); ++pos) {
            if (S.occ[k][pos].first >= 0) continue;
            int i = S.chains[k][pos];
            int sid = (int)S.summands.size();
            S.summands.push_back({i, ctx.m[i - 1] + 1, S.levels[k][pos], S.lo + (int)k});
            S.occ[k][pos] = {sid, 0};
        }
    return S;
}

std::map<std::array<int, 4>, size_t> split_multiset(const SplitY& s) {
    std::map<std::array<int, 4>, size_t> out;
    for (const auto& w : s.summands) ++out[{w.i, w.a, w.b, w.r}];
    return out;
}

Triple triple_of(const AlgebraContext& ctx, const ProjComplex& X) {
    require_chain_case(ctx, "triple_of");
    auto chk = verify_complex(X);
    if (!chk.is_complex) throw domain_error("triple_of: not a complex");
    if (!chk.is_minimal) throw domain_error("triple_of: complex is not minimal");
    const BasedAlgebra& A = *ctx.A;
    const BasedAlgebra& H = *ctx.H;
    Triple T;
    T.ctx = &ctx;
    T.vlo = X.lo;
    // Y components with offsets per X component
    std::vector<std::vector<size_t>> offset(X.comps.size());
    std::vector<std::vector<int>> ycomps;
    for (size_t k = 0; k < X.comps.size(); ++k) {
        std::vector<int> yc;
        for (int cls : X.comps[k]) {
            offset[k].push_back(yc.size());
            for (const auto& p : ctx.classes[cls]) yc.push_back(ctx.h_vertex(p));
        }
        ycomps.push_back(std::move(yc));
        T.V.push_back(X.comps[k]);
    }
    std::vector<AMat> ydiffs;
    for (size_t k = 0; k + 1 < X.comps.size(); ++k) {
        AMat yd(ycomps[k + 1], ycomps[k]);
        for (size_t q = 0; q < X.comps[k + 1].size(); ++q)
            for (size_t p = 0; p < X.comps[k].size(); ++p)
                for (const auto& [bi, c] : X.diffs[k].at(q, p)) {
                    if (A.basis(bi).idempotent)
                        throw domain_error("triple_of: non-radical differential entry");
                    const AlgElt& himg = ctx.embed[bi];
                    for (const auto& [hb, hc] : himg) {
                        int hsrc = H.basis(hb).src, htgt = H.basis(hb).tgt;
                        // locate hsrc inside component p, htgt inside component q
                        size_t scol = 0, srow = 0;
                        bool fs = false, ft = false;
                        const auto& spreds = ctx.classes[X.comps[k][p]];
                        for (size_t t = 0; t < spreds.size(); ++t)
                            if (ctx.h_vertex(spreds[t]) == hsrc) {
                                scol = offset[k][p] + t;
                                fs = true;
                            }
                        const auto& tpreds = ctx.classes[X.comps[k + 1][q]];
                        for (size_t t = 0; t < tpreds.size(); ++t)
                            if (ctx.h_vertex(tpreds[t]) == htgt) {
                                srow = offset[k + 1][q] + t;
                                ft = true;
                            }
                        if (!fs || !ft) throw domain_error("triple_of: embedding misaligned");
                        yd.at(srow, scol) =
                            H.add(yd.at(srow, scol), H.elt(hb, ctx.F.mul(c, hc)));
                    }
                }
        ydiffs.push_back(std::move(yd));
    }
    T.Y = make_complex(H, X.lo, ycomps, std::move(ydiffs));
    if (T.Y.comps != ycomps) throw domain_error("triple_of: Y lost boundary degrees");

    // canonical gluing map: rows = Q-occurrences at (i,j), cols = V-copies of
    // classes containing (i,j); the identity pattern by construction
    for (size_t k = 0; k < ycomps.size(); ++k) {
        int r = X.lo + (int)k;
        std::map<Omega, std::vector<size_t>> rows_at;   // position lists
        std::map<Omega, std::vector<size_t>> cols_at;   // X-component lists
        for (size_t pos = 0; pos < ycomps[k].size(); ++pos) {
            DiagPos dp = ctx.hpos[ycomps[k][pos]];
            rows_at[{dp.i, dp.j}].push_back(pos);
        }
        for (size_t p = 0; p < X.comps[k].size(); ++p)
            for (const auto& dp : ctx.classes[X.comps[k][p]])
                cols_at[{dp.i, dp.j}].push_back(p);
        for (auto& [om, rows] : rows_at) {
            const auto& cols = cols_at[om];
            if (rows.size() != cols.size())
                throw domain_error("triple_of: theta block is not square");
            QMatrix th(rows.size(), cols.size());
            for (size_t rr = 0; rr < rows.size(); ++rr) {
                // the rr-th occurrence comes from the rr-th component listed
                th.at(rr, rr) = ctx.F.one();
            }
            T.theta[{om, r}] = std::move(th);
        }
    }
    return T;
}

ThetaBlock* DecoratedMatrices::find(const Omega& pos, int r) {
    for (auto& b : blocks)
        if (b.pos == pos && b.r == r) return &b;
    return nullptr;
}
const ThetaBlock* DecoratedMatrices::find(const Omega& pos, int r) const {
    for (const auto& b : blocks)
        if (b.pos == pos && b.r == r) return &b;
    return nullptr;
}

DecoratedMatrices decorated_matrices(const Triple& T) {
    const AlgebraContext& ctx = *T.ctx;
    const Field& F = ctx.F;
    SplitY S = split_h_complex(ctx, T.Y);
    DecoratedMatrices dm;
    dm.ctx = &ctx;
    dm.summands = S.summands;
    // V multiplicities
    for (size_t k = 0; k < T.V.size(); ++k)
        for (int cls : T.V[k]) ++dm.v_mult[{cls, T.vlo + (int)k}];

    // per ((i,j), r): occurrence positions (rows) and V-columns
    for (size_t k = 0; k < T.Y.comps.size(); ++k) {
        int r = T.Y.lo + (int)k;
        std::map<Omega, std::vector<size_t>> rows_at;
        for (size_t pos = 0; pos < T.Y.comps[k].size(); ++pos) {
            DiagPos dp = ctx.hpos[T.Y.comps[k][pos]];
            rows_at[{dp.i, dp.j}].push_back(pos);
        }
        for (auto& [om, rows] : rows_at) {
            auto it = T.theta.find({om, r});
            if (it == T.theta.end()) throw domain_error("theta block missing");
            const QMatrix& th0 = it->second;
            // left-multiply by the diagonal block of the splitting isomorphism
            QMatrix ub(rows.size(), rows.size());
            for (size_t a = 0; a < rows.size(); ++a)
                for (size_t b = 0; b < rows.size(); ++b) ub.at(a, b) = S.U[k].at(rows[a], rows[b]);
            QMatrix th = ub.mul(F, th0);
            ThetaBlock blk;
            blk.pos = om;
            blk.r = r;
            int m = ctx.m[om.i - 1];
            std::vector<size_t> order(rows.size());
            std::vector<StripeLabel> labels(rows.size());
            std::vector<int> summand(rows.size());
            for (size_t a = 0; a < rows.size(); ++a) {
                auto [sid, end] = S.occ[k][rows[a]];
                const WCopy& w = S.summands[sid];
                labels[a] = end == 0 ? StripeLabel{w.a, -1} : StripeLabel{w.b, +1};
                summand[a] = sid;
                order[a] = a;
            }
            std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
                int rx = stripe_rank(labels[x], om.j, m), ry = stripe_rank(labels[y], om.j, m);
                if (rx != ry) return rx < ry;
                return summand[x] < summand[y];
            });
            blk.theta = QMatrix(rows.size(), th.cols());
            for (size_t a = 0; a < rows.size(); ++a) {
                blk.row_label.push_back(labels[order[a]]);
                blk.row_summand.push_back(summand[order[a]]);
                for (size_t c = 0; c < th.cols(); ++c) blk.theta.at(a, c) = th.at(order[a], c);
            }
            // column labels: classes containing (i,j) in V-copy order
            std::map<int, int> copy_counter;
            for (size_t p = 0; p < T.V[k].size(); ++p) {
                int cls = T.V[k][p];
                int idx = copy_counter[cls]++;
                bool has = false;
                for (const auto& dp : ctx.classes[cls])
                    if (dp.i == om.i && dp.j == om.j) has = true;
                if (has) blk.col_label.push_back({cls, idx});
            }
            if (blk.col_label.size() != blk.theta.cols())
                throw domain_error("theta column labels misaligned");
            dm.blocks.push_back(std::move(blk));
        }
    }
    std::sort(dm.blocks.begin(), dm.blocks.end(), [](const ThetaBlock& a, const ThetaBlock& b) {
        if (a.r != b.r) return a.r < b.r;
        return a.pos < b.pos;
    });
    validate_decoration(dm);
    return dm;
}

void validate_decoration(const DecoratedMatrices& dm) {
    const AlgebraContext& ctx = *dm.ctx;
    // stripe labels weakly increasing, rows matched to summands
    for (const auto& b : dm.blocks) {
        int m = ctx.m[b.pos.i - 1];
        for (size_t a = 0; a + 1 < b.row_label.size(); ++a)
            if (stripe_rank(b.row_label[a], b.pos.j, m) >
                stripe_rank(b.row_label[a + 1], b.pos.j, m))
                throw domain_error("stripe labels out of order");
        if (b.row_label.size() != b.theta.rows() || b.col_label.size() != b.theta.cols())
            throw domain_error("decoration size mismatch");
    }
    // conjugate stripes: both ends of a two-term summand appear with aligned order
    std::map<int, int> seen_count;
    for (const auto& b : dm.blocks)
        for (int sid : b.row_summand) ++seen_count[sid];
    for (size_t sid = 0; sid < dm.summands.size(); ++sid) {
        const WCopy& w = dm.summands[sid];
        int expect = w.stalk(ctx.m) ? 1 : 2;
        if (seen_count[(int)sid] != expect)
            throw domain_error("summand occurrence count mismatch");
    }
    // tied positions have identical column labels (same class, same copies)
    if (ctx.datum)
        for (const auto& b : dm.blocks) {
            auto p = ctx.datum->partner({b.pos.i, b.pos.j});
            if (!p || *p == Omega{b.pos.i, b.pos.j}) continue;
            const ThetaBlock* other = dm.find(*p, b.r);
            if (!other) {
                if (b.theta.cols() != 0) throw domain_error("tied block missing");
                continue;
            }
            if (other->col_label != b.col_label)
                throw domain_error("tied blocks with different column labels");
        }
}

bool all_blocks_square_invertible(const DecoratedMatrices& dm) {
    const Field& F = dm.ctx->F;
    for (const auto& b : dm.blocks) {
        if (b.theta.rows() != b.theta.cols()) return false;
        if (rank(F, b.theta) != b.theta.rows()) return false;
    }
    return true;
}

ProjComplex reconstruct_from_decorated(const DecoratedMatrices& dm) {
    const AlgebraContext& ctx = *dm.ctx;
    const BasedAlgebra& A = *ctx.A;
    const BasedAlgebra& H = *ctx.H;
    const Field& F = ctx.F;
    if (!all_blocks_square_invertible(dm))
        throw domain_error("reconstruct: a gluing block is not square invertible");
    if (dm.blocks.empty()) return zero_complex(A);

    int lo = dm.blocks.front().r, hi = dm.blocks.front().r;
    for (const auto& b : dm.blocks) {
        lo = std::min(lo, b.r);
        hi = std::max(hi, b.r);
    }
    for (const auto& [key, n] : dm.v_mult) {
        if (n == 0) continue;
        lo = std::min(lo, key.second);
        hi = std::max(hi, key.second);
    }
    int nd = hi - lo + 1;

    // X components: class-major order of the V-copies
    std::vector<std::vector<int>> xcomps(nd);
    // per degree: (class, copy) -> X component index
    std::vector<std::map<std::pair<int, int>, size_t>> xindex(nd);
    for (int k = 0; k < nd; ++k) {
        for (size_t cls = 0; cls < ctx.classes.size(); ++cls) {
            auto it = dm.v_mult.find({(int)cls, lo + k});
            size_t n = it == dm.v_mult.end() ? 0 : it->second;
            for (size_t c = 0; c < n; ++c) {
                xindex[k][{(int)cls, (int)c}] = xcomps[k].size();
                xcomps[k].push_back((int)cls);
            }
        }
    }

    // Y occurrences per degree: rows of the blocks, in block order
    struct Occ { Omega pos; int summand; };
    std::vector<std::vector<Occ>> yocc(nd);
    std::vector<std::map<std::pair<Omega, int>, size_t>> row_start(nd); // block -> first occ
    for (const auto& b : dm.blocks) {
        int k = b.r - lo;
        row_start[k][{b.pos, b.r}] = yocc[k].size();
        for (size_t a = 0; a < b.theta.rows(); ++a)
            yocc[k].push_back({b.pos, b.row_summand[a]});
    }
    // expansion of Y^k (+ V^k appended)
    std::vector<SumExpansion> yexp(nd);
    std::vector<size_t> ydim(nd), vdim(nd);
    for (int k = 0; k < nd; ++k) {
        std::vector<int> verts;
        for (const auto& o : yocc[k]) verts.push_back(ctx.h_vertex({o.pos.i, o.pos.j, 0}));
        yexp[k] = expand_sum(H, verts);
        ydim[k] = yexp[k].dim();
        vdim[k] = xcomps[k].size();
    }

    // generators x_s = (y_s, v_s) in the Y (+) V expansion
    std::vector<QMatrix> gens(nd);
    for (int k = 0; k < nd; ++k) {
        gens[k] = QMatrix(ydim[k] + vdim[k], vdim[k]);
        for (size_t s = 0; s < xcomps[k].size(); ++s) gens[k].at(ydim[k] + s, s) = F.one();
        for (const auto& b : dm.blocks) {
            if (b.r != lo + k) continue;
            size_t start = row_start[k][{b.pos, b.r}];
            for (size_t col = 0; col < b.theta.cols(); ++col) {
                size_t s = xindex[k].at(b.col_label[col]);
                for (size_t row = 0; row < b.theta.rows(); ++row) {
                    if (Field::is_zero(b.theta.at(row, col))) continue;
                    // top generator of the occurrence = its idempotent path
                    size_t occ_id = start + row;
                    int hv = ctx.h_vertex({b.pos.i, b.pos.j, 0});
                    const auto& pb = H.proj_basis(hv);
                    size_t off = 0;
                    bool found = false;
                    for (size_t t = 0; t < pb.size(); ++t)
                        if (pb[t] == H.idempotent_index(hv)) { off = t; found = true; }
                    if (!found) throw domain_error("projective without idempotent path");
                    gens[k].at(yexp[k].comp_start[occ_id] + off, s) = b.theta.at(row, col);
                }
            }
        }
    }

    // action of an algebra element (through the embedding) on the expansion
    auto left_act = [&](int k, const AlgElt& a, const QMatrix& vec) {
        QMatrix out(ydim[k] + vdim[k], vec.cols());
        AlgElt ha;
        for (const auto& [bi, c] : a)
            ha = H.add(ha, H.scale(c, ctx.embed[bi]));
        for (size_t c = 0; c < vec.cols(); ++c) {
            // Y part
            for (size_t r = 0; r < ydim[k]; ++r) {
                if (Field::is_zero(vec.at(r, c))) continue;
                auto [comp, off] = yexp[k].coords[r];
                int hv = ctx.h_vertex({yocc[k][comp].pos.i, yocc[k][comp].pos.j, 0});
                int pb = H.proj_basis(hv)[off];
                AlgElt img = H.mul(ha, H.elt(pb, vec.at(r, c)));
                for (const auto& [hb, hc] : img) {
                    const auto& pbl = H.proj_basis(hv);
                    auto it = std::find(pbl.begin(), pbl.end(), hb);
                    if (it == pbl.end()) throw domain_error("left action escaped projective");
                    size_t rr = yexp[k].comp_start[comp] + (it - pbl.begin());
                    out.at(rr, c) = F.add(out.at(rr, c), hc);
                }
            }
            // V part: only the class idempotent acts
            for (size_t s = 0; s < vdim[k]; ++s) {
                if (Field::is_zero(vec.at(ydim[k] + s, c))) continue;
                FVal sc = A.scalar_part(a, xcomps[k][s]);
                if (!Field::is_zero(sc))
                    out.at(ydim[k] + s, c) =
                        F.add(out.at(ydim[k] + s, c), F.mul(sc, vec.at(ydim[k] + s, c)));
            }
        }
        return out;
    };

    // sanity: the generators span a submodule of the right dimension
    for (int k = 0; k < nd; ++k) {
        QMatrix all(ydim[k] + vdim[k], 0);
        size_t expect = 0;
        for (size_t s = 0; s < xcomps[k].size(); ++s) {
            expect += A.proj_basis(xcomps[k][s]).size();
            for (int bi : A.proj_basis(xcomps[k][s])) {
                QMatrix col(vdim[k], 1);
                QMatrix gcol(ydim[k] + vdim[k], 1);
                for (size_t r = 0; r < ydim[k] + vdim[k]; ++r) gcol.at(r, 0) = gens[k].at(r, s);
                all = all.hstack(left_act(k, A.elt(bi, F.one()), gcol));
                (void)col;
            }
        }
        size_t got = rank(F, all);
        size_t want = ydim[k] + vdim[k];
        // dim X = dim Y + dim V - dim Ybar, and dim Ybar = number of occurrences
        want -= yocc[k].size();
        if (got != expect || got != want)
            throw domain_error("reconstruct: generators do not present the pullback");
    }

    // differential of Y in the split basis, applied to the y-part of the
    // generators, then re-expressed over the generators of the next degree
    std::vector<AMat> xdiffs;
    for (int k = 0; k + 1 < nd; ++k) {
        // d_Y: occurrence-level map built from the two-term summands
        QMatrix dy(ydim[k + 1] + vdim[k + 1], ydim[k] + vdim[k]);
        for (size_t src = 0; src < yocc[k].size(); ++src) {
            const Occ& o = yocc[k][src];
            const WCopy& w = dm.summands[o.summand];
            if (w.stalk(ctx.m)) continue;
            if (w.r != lo + k + 1 || o.pos.j != w.a) continue; // source ends only
            // find the target occurrence of the same summand in degree k+1
            int tgt = -1;
            for (size_t t = 0; t < yocc[k + 1].size(); ++t)
                if (yocc[k + 1][t].summand == o.summand) tgt = (int)t;
            if (tgt < 0) throw domain_error("summand target occurrence missing");
            // kappa: path basis E_{P,(i,a)} -> E_{P,(i,b)}
            int hv_src = ctx.h_vertex({w.i, w.a, 0});
            int hv_tgt = ctx.h_vertex({w.i, w.b, 0});
            int kpa = ctx.h_path(w.i, w.a, w.b);
            for (size_t t = 0; t < H.proj_basis(hv_src).size(); ++t) {
                AlgElt img = H.mul(H.elt(H.proj_basis(hv_src)[t], F.one()),
                                   H.elt(kpa, F.one()));
                for (const auto& [hb, hc] : img) {
                    const auto& pbl = H.proj_basis(hv_tgt);
                    auto it = std::find(pbl.begin(), pbl.end(), hb);
                    if (it == pbl.end()) throw domain_error("kappa escaped projective");
                    dy.at(yexp[k + 1].comp_start[tgt] + (it - pbl.begin()),
                          yexp[k].comp_start[src] + t) = hc;
                }
            }
        }
        // images of generators
        QMatrix img = dy.mul(F, gens[k]);
        // solve img = sum_s' u_{s' s} . x_{s'} with radical hom coefficients
        struct Unknown { size_t s2; int hb; };
        std::vector<Unknown> unknowns;
        QMatrix sys(ydim[k + 1] + vdim[k + 1], 0);
        for (size_t s2 = 0; s2 < xcomps[k + 1].size(); ++s2) {
            QMatrix gcol(ydim[k + 1] + vdim[k + 1], 1);
            for (size_t r = 0; r < gcol.rows(); ++r) gcol.at(r, 0) = gens[k + 1].at(r, s2);
            for (size_t cls = 0; cls < ctx.classes.size(); ++cls) {
                for (int hb : A.hom_basis((int)cls, xcomps[k + 1][s2])) {
                    if (!A.basis(hb).radical) continue;
                    unknowns.push_back({s2, hb});
                    sys = sys.hstack(left_act(k + 1, A.elt(hb, F.one()), gcol));
                }
            }
        }
        auto sol = solve_linear(F, sys, img);
        if (!sol) throw domain_error("reconstruct: differential solve failed");
        AMat dx(xcomps[k + 1], xcomps[k]);
        for (size_t u = 0; u < unknowns.size(); ++u)
            for (size_t s = 0; s < xcomps[k].size(); ++s) {
                const FVal& c = sol->at(u, s);
                if (Field::is_zero(c)) continue;
                if (A.basis(unknowns[u].hb).src != xcomps[k][s])
                    throw domain_error("reconstruct: entry outside Hom space");
                dx.at(unknowns[u].s2, s) =
                    A.add(dx.at(unknowns[u].s2, s), A.elt(unknowns[u].hb, c));
            }
        xdiffs.push_back(std::move(dx));
    }
    ProjComplex X = make_complex(A, lo, xcomps, std::move(xdiffs));
    auto chk = verify_complex(X);
    if (!chk.is_complex || !chk.is_minimal)
        throw domain_error("reconstruct: output failed verification (" + chk.issue + ")");
    return X;
}

ProjComplex reconstruct(const Triple& T) {
    return reconstruct_from_decorated(decorated_matrices(T));
}

void apply_transformation(DecoratedMatrices& dm, const AdmissibleTransform& t) {
    const AlgebraContext& ctx = *dm.ctx;
    const Field& F = ctx.F;
    // row side first: check shape, triangularity, conjugate consistency
    std::map<std::pair<int, int>, QMatrix> stripe_diag; // (summand-set hash) -> diag block
    for (const auto& [key, R] : t.row_ops) {
        const ThetaBlock* b = dm.find(key.first, key.second);
        if (!b) throw domain_error("row op on a missing block");
        size_t n = b->theta.rows();
        if (R.rows() != n || R.cols() != n) throw domain_error("row op shape mismatch");
        int m = ctx.m[b->pos.i - 1];
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) {
                int rr = stripe_rank(b->row_label[r], b->pos.j, m);
                int rc = stripe_rank(b->row_label[c], b->pos.j, m);
                if (rr < rc && !Field::is_zero(R.at(r, c)))
                    throw domain_error("row op adds a higher-weight row to a lower-weight row");
            }
    }
    // conjugate stripes share the diagonal block: collect per-summand-stripe
    // and compare through the two blocks that contain it
    for (size_t sid = 0; sid < dm.summands.size(); ++sid) {
        const WCopy& w = dm.summands[sid];
        if (w.stalk(ctx.m)) continue;
        // rows of this summand's stripes in the two blocks
        auto stripe_of = [&](const Omega& pos, int r, const StripeLabel& lbl) {
            const ThetaBlock* b = dm.find(pos, r);
            std::vector<size_t> rows;
            if (!b) return std::pair<const ThetaBlock*, std::vector<size_t>>{nullptr, rows};
            for (size_t i = 0; i < b->row_label.size(); ++i)
                if (b->row_label[i] == lbl) rows.push_back(i);
            return std::pair<const ThetaBlock*, std::vector<size_t>>{b, rows};
        };
        auto [blow, rows_low] = stripe_of({w.i, w.b}, w.r, {w.a, -1});
        auto [bhigh, rows_high] = stripe_of({w.i, w.a}, w.r - 1, {w.b, +1});
        if (!blow || !bhigh) throw domain_error("conjugate stripe missing");
        auto Rlow = t.row_ops.find({blow->pos, blow->r});
        auto Rhigh = t.row_ops.find({bhigh->pos, bhigh->r});
        for (size_t x = 0; x < rows_low.size(); ++x)
            for (size_t y = 0; y < rows_low.size(); ++y) {
                FVal a = Rlow == t.row_ops.end()
                             ? (x == y ? F.one() : F.zero())
                             : Rlow->second.at(rows_low[x], rows_low[y]);
                FVal b2 = Rhigh == t.row_ops.end()
                              ? (x == y ? F.one() : F.zero())
                              : Rhigh->second.at(rows_high[x], rows_high[y]);
                if (!Field::eq(a, b2))
                    throw domain_error("conjugate stripes transformed differently");
            }
    }
    // diagonal stripe blocks must be invertible (checked via whole-matrix rank:
    // triangular with invertible diagonal iff invertible)
    for (const auto& [key, R] : t.row_ops)
        if (rank(F, R) != R.rows()) throw domain_error("singular row operation");
    for (const auto& [key, C] : t.col_ops) {
        auto it = dm.v_mult.find(key);
        size_t n = it == dm.v_mult.end() ? 0 : it->second;
        if (C.rows() != n || C.cols() != n) throw domain_error("column op shape mismatch");
        if (rank(F, C) != n) throw domain_error("singular column operation");
    }
    // apply
    for (auto& b : dm.blocks) {
        auto R = t.row_ops.find({b.pos, b.r});
        if (R != t.row_ops.end()) b.theta = R->second.mul(F, b.theta);
        // columns: class-grouped, simultaneous across blocks by construction
        std::map<int, std::vector<size_t>> by_class;
        for (size_t c = 0; c < b.col_label.size(); ++c)
            by_class[b.col_label[c].first].push_back(c);
        for (auto& [cls, cols] : by_class) {
            auto C = t.col_ops.find({cls, b.r});
            if (C == t.col_ops.end()) continue;
            QMatrix sub(b.theta.rows(), cols.size());
            for (size_t r = 0; r < b.theta.rows(); ++r)
                for (size_t c = 0; c < cols.size(); ++c) sub.at(r, c) = b.theta.at(r, cols[c]);
            QMatrix res = sub.mul(F, C->second);
            for (size_t r = 0; r < b.theta.rows(); ++r)
                for (size_t c = 0; c < cols.size(); ++c) b.theta.at(r, cols[c]) = res.at(r, c);
        }
    }
    validate_decoration(dm);
}

AdmissibleTransform random_admissible_transform(const DecoratedMatrices& dm,
                                                std::mt19937_64& rng, int n_ops) {
    const AlgebraContext& ctx = *dm.ctx;
    const Field& F = ctx.F;
    AdmissibleTransform t;
    auto small = [&]() { return F.from_long((long)(rng() % 5) - 2); };
    auto small_nz = [&]() {
        long v = (long)(rng() % 4) - 2;
        if (v == 0) v = 1;
        return F.from_long(v);
    };
    auto ensure_row = [&](const ThetaBlock& b) -> QMatrix& {
        auto key = std::make_pair(b.pos, b.r);
        auto it = t.row_ops.find(key);
        if (it == t.row_ops.end())
            it = t.row_ops.insert({key, QMatrix::identity(F, b.theta.rows())}).first;
        return it->second;
    };
    for (int op = 0; op < n_ops; ++op) {
        int kind = (int)(rng() % 3);
        if (kind == 0 && !dm.v_mult.empty()) {
            // column op on a class group
            size_t pick = rng() % dm.v_mult.size();
            auto it = dm.v_mult.begin();
            std::advance(it, pick);
            size_t n = it->second;
            if (n == 0) continue;
            auto key = it->first;
            auto cit = t.col_ops.find(key);
            if (cit == t.col_ops.end())
                cit = t.col_ops.insert({key, QMatrix::identity(F, n)}).first;
            QMatrix E = QMatrix::identity(F, n);
            size_t i = rng() % n, j = rng() % n;
            if (i == j) E.at(i, i) = small_nz();
            else E.at(i, j) = small();
            cit->second = cit->second.mul(F, E);
        } else if (kind == 1 && !dm.summands.empty()) {
            // simultaneous invertible op within a conjugate stripe pair (or a
            // stalk stripe)
            size_t sid = rng() % dm.summands.size();
            const WCopy& w = dm.summands[sid];
            std::vector<std::pair<Omega, int>> sides;
            std::vector<StripeLabel> lbls;
            sides.push_back({{w.i, w.b}, w.r});
            lbls.push_back({w.a, -1});
            if (!w.stalk(ctx.m)) {
                sides.push_back({{w.i, w.a}, w.r - 1});
                lbls.push_back({w.b, +1});
            }
            // stripe size from the first side
            const ThetaBlock* b0 = dm.find(sides[0].first, sides[0].second);
            if (!b0) continue;
            std::vector<size_t> rows0;
            for (size_t i = 0; i < b0->row_label.size(); ++i)
                if (b0->row_label[i] == lbls[0]) rows0.push_back(i);
            if (rows0.empty()) continue;
            size_t i = rng() % rows0.size(), j = rng() % rows0.size();
            FVal c = i == j ? small_nz() : small();
            for (size_t side = 0; side < sides.size(); ++side) {
                const ThetaBlock* b = dm.find(sides[side].first, sides[side].second);
                if (!b) throw domain_error("conjugate block missing");
                std::vector<size_t> rows;
                for (size_t ii = 0; ii < b->row_label.size(); ++ii)
                    if (b->row_label[ii] == lbls[side]) rows.push_back(ii);
                QMatrix& R = ensure_row(*b);
                QMatrix E = QMatrix::identity(F, R.rows());
                if (i == j) E.at(rows[i], rows[i]) = c;
                else E.at(rows[i], rows[j]) = c;
                R = E.mul(F, R);
            }
        } else if (!dm.blocks.empty()) {
            // addition from a lower-weight row to a higher-weight row
            const ThetaBlock& b = dm.blocks[rng() % dm.blocks.size()];
            size_t n = b.theta.rows();
            if (n < 2) continue;
            int m = ctx.m[b.pos.i - 1];
            size_t lo_row = rng() % n, hi_row = rng() % n;
            int rl = stripe_rank(b.row_label[lo_row], b.pos.j, m);
            int rh = stripe_rank(b.row_label[hi_row], b.pos.j, m);
            if (rl == rh) continue;
            if (rl > rh) std::swap(lo_row, hi_row);
            QMatrix& R = ensure_row(b);
            QMatrix E = QMatrix::identity(F, n);
            E.at(hi_row, lo_row) = small();
            R = E.mul(F, R);
        }
    }
    return t;
}

} // namespace gentle
