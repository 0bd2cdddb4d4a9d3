#include "based_algebra.hpp"
#include <algorithm>
#include <functional>

namespace gentle {

BasedAlgebra::BasedAlgebra(Field F, std::vector<std::string> vertex_labels,
                           std::vector<BasisElem> basis,
                           std::map<std::pair<int, int>, AlgElt> table, bool check)
    : F_(std::move(F)), vertex_labels_(std::move(vertex_labels)),
      basis_(std::move(basis)), table_(std::move(table)) {
    size_t V = vertex_labels_.size();
    idem_of_vertex_.assign(V, -1);
    for (size_t i = 0; i < basis_.size(); ++i) {
        const auto& b = basis_[i];
        if (b.src < 0 || b.src >= (int)V || b.tgt < 0 || b.tgt >= (int)V)
            throw domain_error("basis element with out-of-range vertex");
        if (b.idempotent) {
            if (b.src != b.tgt || idem_of_vertex_[b.src] != -1)
                throw domain_error("bad idempotent basis element");
            idem_of_vertex_[b.src] = static_cast<int>(i);
        }
    }
    for (size_t v = 0; v < V; ++v)
        if (idem_of_vertex_[v] < 0)
            throw domain_error("vertex without idempotent: " + vertex_labels_[v]);

    hom_.assign(V * V, {});
    proj_.assign(V, {});
    for (size_t i = 0; i < basis_.size(); ++i) {
        hom_[basis_[i].src * V + basis_[i].tgt].push_back(static_cast<int>(i));
        proj_[basis_[i].tgt].push_back(static_cast<int>(i));
    }

    // group vertices connected by degree-zero non-idempotent elements
    std::vector<int> parent(V);
    for (size_t v = 0; v < V; ++v) parent[v] = static_cast<int>(v);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& b : basis_)
        if (!b.radical && !b.idempotent && b.src != b.tgt)
            parent[find(b.src)] = find(b.tgt);
    std::map<int, std::vector<int>> groups;
    for (size_t v = 0; v < V; ++v) groups[find(static_cast<int>(v))].push_back(static_cast<int>(v));
    class_of_vertex_.assign(V, -1);
    for (auto& [root, members] : groups) {
        for (int v : members) class_of_vertex_[v] = static_cast<int>(classes_.size());
        classes_.push_back(members);
    }

    if (check) verify_structure();
}

AlgElt BasedAlgebra::unit() const {
    AlgElt u;
    for (size_t v = 0; v < vertex_labels_.size(); ++v)
        u.push_back({idem_of_vertex_[v], F_.one()});
    std::sort(u.begin(), u.end());
    return u;
}

AlgElt BasedAlgebra::elt(int i, FVal c) const {
    if (Field::is_zero(c)) return {};
    return {{i, std::move(c)}};
}

AlgElt BasedAlgebra::add(const AlgElt& a, const AlgElt& b) const {
    AlgElt r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            FVal s = F_.add(a[i].second, b[j].second);
            if (!Field::is_zero(s)) r.push_back({a[i].first, std::move(s)});
            ++i; ++j;
        }
    }
    return r;
}

AlgElt BasedAlgebra::sub(const AlgElt& a, const AlgElt& b) const {
    return add(a, scale(F_.from_long(-1), b));
}

AlgElt BasedAlgebra::scale(const FVal& c, const AlgElt& a) const {
    if (Field::is_zero(c)) return {};
    AlgElt r = a;
    for (auto& [i, x] : r) x = F_.mul(c, x);
    return r;
}

AlgElt BasedAlgebra::mul(const AlgElt& a, const AlgElt& b) const {
    AlgElt r;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) {
            auto it = table_.find({i, j});
            if (it == table_.end()) continue;
            r = add(r, scale(F_.mul(x, y), it->second));
        }
    return r;
}

bool BasedAlgebra::eq(const AlgElt& a, const AlgElt& b) const {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].first != b[i].first || !Field::eq(a[i].second, b[i].second)) return false;
    return true;
}

FVal BasedAlgebra::scalar_part(const AlgElt& a, int v) const {
    for (const auto& [i, x] : a)
        if (i == idem_of_vertex_[v]) return x;
    return F_.zero();
}

bool BasedAlgebra::in_radical(const AlgElt& a) const {
    for (const auto& [i, x] : a)
        if (!basis_[i].radical) return false;
    return true;
}

std::string BasedAlgebra::to_string(const AlgElt& a) const {
    if (a.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < a.size(); ++k) {
        if (k) s += " + ";
        s += Field::to_string(a[k].second) + "*" + basis_[a[k].first].label;
    }
    return s;
}

const std::vector<int>& BasedAlgebra::hom_basis(int v, int w) const {
    return hom_[v * vertex_labels_.size() + w];
}

const std::vector<int>& BasedAlgebra::proj_basis(int v) const { return proj_[v]; }

QMatrix BasedAlgebra::left_action(const AlgElt& a, int v) const {
    const auto& pb = proj_[v];
    std::vector<int> pos(basis_.size(), -1);
    for (size_t k = 0; k < pb.size(); ++k) pos[pb[k]] = static_cast<int>(k);
    QMatrix m(pb.size(), pb.size());
    for (size_t c = 0; c < pb.size(); ++c) {
        AlgElt img = mul(a, elt(pb[c], F_.one()));
        for (const auto& [i, x] : img) {
            if (pos[i] < 0) throw domain_error("left action left P_v");
            m.at(pos[i], c) = x;
        }
    }
    return m;
}

void BasedAlgebra::verify_structure() const {
    AlgElt one = unit();
    std::vector<AlgElt> bas;
    for (size_t i = 0; i < basis_.size(); ++i) bas.push_back(elt((int)i, F_.one()));
    for (size_t i = 0; i < basis_.size(); ++i) {
        if (!eq(mul(one, bas[i]), bas[i]) || !eq(mul(bas[i], one), bas[i]))
            throw domain_error("unit fails on basis element " + basis_[i].label);
        // weight compatibility: e_src b = b = b e_tgt
        AlgElt es = elt(idem_of_vertex_[basis_[i].src], F_.one());
        AlgElt et = elt(idem_of_vertex_[basis_[i].tgt], F_.one());
        if (!eq(mul(es, bas[i]), bas[i]) || !eq(mul(bas[i], et), bas[i]))
            throw domain_error("basis element with wrong weights: " + basis_[i].label);
    }
    for (size_t i = 0; i < basis_.size(); ++i)
        for (size_t j = 0; j < basis_.size(); ++j) {
            AlgElt ij = mul(bas[i], bas[j]);
            for (size_t k = 0; k < basis_.size(); ++k)
                if (!eq(mul(ij, bas[k]), mul(bas[i], mul(bas[j], bas[k]))))
                    throw domain_error("associativity fails on basis triple");
        }
}

SCA BasedAlgebra::to_sca() const {
    std::map<std::pair<size_t, size_t>, SCA::Elem> t;
    for (size_t i = 0; i < basis_.size(); ++i)
        for (size_t j = 0; j < basis_.size(); ++j) {
            AlgElt p = mul(elt((int)i, F_.one()), elt((int)j, F_.one()));
            if (p.empty()) continue;
            SCA::Elem v(basis_.size(), F_.zero());
            for (const auto& [k, x] : p) v[k] = x;
            t[{i, j}] = std::move(v);
        }
    SCA::Elem u(basis_.size(), F_.zero());
    for (const auto& [k, x] : unit()) u[k] = x;
    return SCA(F_, basis_.size(), std::move(t), std::move(u), false);
}

AMat::AMat(std::vector<int> rows, std::vector<int> cols)
    : row_v(std::move(rows)), col_v(std::move(cols)),
      e(row_v.size() * col_v.size()) {}

bool AMat::is_zero(const BasedAlgebra& A) const {
    for (const auto& x : e)
        if (!A.is_zero(x)) return false;
    return true;
}

AMat amat_identity(const BasedAlgebra& A, const std::vector<int>& verts) {
    AMat m(verts, verts);
    for (size_t i = 0; i < verts.size(); ++i)
        m.at(i, i) = A.elt(A.idempotent_index(verts[i]), A.field().one());
    return m;
}

AMat amat_compose(const BasedAlgebra& A, const AMat& second, const AMat& first) {
    if (first.row_v != second.col_v) throw domain_error("amat_compose shape mismatch");
    AMat r(second.row_v, first.col_v);
    for (size_t s = 0; s < second.rows(); ++s)
        for (size_t p = 0; p < first.cols(); ++p) {
            AlgElt acc;
            for (size_t q = 0; q < first.rows(); ++q)
                acc = A.add(acc, A.mul(first.at(q, p), second.at(s, q)));
            r.at(s, p) = std::move(acc);
        }
    return r;
}

AMat amat_add(const BasedAlgebra& A, const AMat& a, const AMat& b) {
    AMat r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = A.add(r.e[i], b.e[i]);
    return r;
}

AMat amat_sub(const BasedAlgebra& A, const AMat& a, const AMat& b) {
    AMat r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = A.sub(r.e[i], b.e[i]);
    return r;
}

AMat amat_scale(const BasedAlgebra& A, const FVal& c, const AMat& a) {
    AMat r = a;
    for (auto& x : r.e) x = A.scale(c, x);
    return r;
}

bool amat_eq(const BasedAlgebra& A, const AMat& a, const AMat& b) {
    if (a.row_v != b.row_v || a.col_v != b.col_v) return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (!A.eq(a.e[i], b.e[i])) return false;
    return true;
}

SumExpansion expand_sum(const BasedAlgebra& A, const std::vector<int>& verts) {
    SumExpansion ex;
    for (size_t c = 0; c < verts.size(); ++c) {
        ex.comp_start.push_back(ex.coords.size());
        for (size_t k = 0; k < A.proj_basis(verts[c]).size(); ++k)
            ex.coords.push_back({static_cast<int>(c), static_cast<int>(k)});
    }
    return ex;
}

QMatrix amat_scalar_matrix(const BasedAlgebra& A, const AMat& m) {
    SumExpansion src = expand_sum(A, m.col_v), tgt = expand_sum(A, m.row_v);
    QMatrix out(tgt.dim(), src.dim());
    // right multiplication: basis path b of P_{col_v[p]} maps to b * m(q,p)
    for (size_t p = 0; p < m.cols(); ++p) {
        const auto& pb = A.proj_basis(m.col_v[p]);
        for (size_t k = 0; k < pb.size(); ++k) {
            size_t col = src.comp_start[p] + k;
            for (size_t q = 0; q < m.rows(); ++q) {
                if (A.is_zero(m.at(q, p))) continue;
                AlgElt img = A.mul(A.elt(pb[k], A.field().one()), m.at(q, p));
                const auto& qb = A.proj_basis(m.row_v[q]);
                for (const auto& [i, x] : img) {
                    auto it = std::find(qb.begin(), qb.end(), i);
                    if (it == qb.end()) throw domain_error("image outside target projective");
                    out.at(tgt.comp_start[q] + (it - qb.begin()), col) = x;
                }
            }
        }
    }
    return out;
}

std::optional<AMat> amat_inverse(const BasedAlgebra& A, const AMat& m) {
    if (m.row_v.size() != m.col_v.size()) return std::nullopt;
    // solve m^{-1} entrywise in scalar coordinates: compose(m, x) = id
    // i.e. for each generator of the row components find preimages; here we
    // invert the expanded matrix and read the based entries back.
    QMatrix M = amat_scalar_matrix(A, m);
    auto Minv = inverse(A.field(), M);
    if (!Minv) return std::nullopt;
    // columns of Minv indexed by expansion of row_v; we need images of the
    // idempotent generators only
    SumExpansion tgt = expand_sum(A, m.row_v);
    QMatrix gens(tgt.dim(), m.row_v.size());
    for (size_t q = 0; q < m.row_v.size(); ++q) {
        const auto& qb = A.proj_basis(m.row_v[q]);
        auto it = std::find(qb.begin(), qb.end(), A.idempotent_index(m.row_v[q]));
        gens.at(tgt.comp_start[q] + (it - qb.begin()), q) = A.field().one();
    }
    QMatrix images = Minv->mul(A.field(), gens);
    return amat_from_images(A, m.row_v, m.col_v, images);
}

std::optional<AMat> amat_from_images(const BasedAlgebra& A,
                                     const std::vector<int>& col_verts,
                                     const std::vector<int>& row_verts,
                                     const QMatrix& images, bool radical_only) {
    SumExpansion tgt = expand_sum(A, row_verts);
    if (images.rows() != tgt.dim() || images.cols() != col_verts.size())
        throw domain_error("amat_from_images shape mismatch");
    AMat out(row_verts, col_verts);
    for (size_t p = 0; p < col_verts.size(); ++p)
        for (size_t r = 0; r < tgt.dim(); ++r) {
            const FVal& x = images.at(r, p);
            if (Field::is_zero(x)) continue;
            auto [q, k] = tgt.coords[r];
            int bidx = A.proj_basis(row_verts[q])[k];
            const BasisElem& b = A.basis(bidx);
            if (b.src != col_verts[p]) return std::nullopt;
            if (radical_only && !b.radical) return std::nullopt;
            out.at(q, p) = A.add(out.at(q, p), A.elt(bidx, x));
        }
    return out;
}

} // namespace gentle
