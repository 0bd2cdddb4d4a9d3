#include "sca.hpp"
#include <random>

namespace gentle {

StructureConstantAlgebra::StructureConstantAlgebra(
    const Field& F, size_t dim, std::map<std::pair<size_t, size_t>, Elem> table,
    Elem unit, bool check)
    : F_(F), n_(dim), table_(std::move(table)), unit_(std::move(unit)) {
    if (unit_.size() != n_) throw domain_error("unit vector has wrong length");
    if (check) check_structure();
}

SCA::Elem StructureConstantAlgebra::basis_elem(size_t i) const {
    Elem e(n_, F_.zero());
    e[i] = F_.one();
    return e;
}

SCA::Elem StructureConstantAlgebra::mul(const Elem& a, const Elem& b) const {
    Elem r(n_, F_.zero());
    for (size_t i = 0; i < n_; ++i) {
        if (Field::is_zero(a[i])) continue;
        for (size_t j = 0; j < n_; ++j) {
            if (Field::is_zero(b[j])) continue;
            auto it = table_.find({i, j});
            if (it == table_.end()) continue;
            FVal c = F_.mul(a[i], b[j]);
            const Elem& prod = it->second;
            for (size_t k = 0; k < n_; ++k)
                if (!Field::is_zero(prod[k])) r[k] = F_.add(r[k], F_.mul(c, prod[k]));
        }
    }
    return r;
}

SCA::Elem StructureConstantAlgebra::add(const Elem& a, const Elem& b) const {
    Elem r(n_);
    for (size_t i = 0; i < n_; ++i) r[i] = F_.add(a[i], b[i]);
    return r;
}

SCA::Elem StructureConstantAlgebra::sub(const Elem& a, const Elem& b) const {
    Elem r(n_);
    for (size_t i = 0; i < n_; ++i) r[i] = F_.sub(a[i], b[i]);
    return r;
}

SCA::Elem StructureConstantAlgebra::scale(const FVal& c, const Elem& a) const {
    Elem r(n_);
    for (size_t i = 0; i < n_; ++i) r[i] = F_.mul(c, a[i]);
    return r;
}

bool StructureConstantAlgebra::is_zero(const Elem& a) const {
    for (const auto& x : a)
        if (!Field::is_zero(x)) return false;
    return true;
}

bool StructureConstantAlgebra::eq(const Elem& a, const Elem& b) const {
    for (size_t i = 0; i < n_; ++i)
        if (!Field::eq(a[i], b[i])) return false;
    return true;
}

void StructureConstantAlgebra::check_structure() const {
    for (size_t i = 0; i < n_; ++i) {
        Elem ei = basis_elem(i);
        if (!eq(mul(unit_, ei), ei) || !eq(mul(ei, unit_), ei))
            throw domain_error("unit is not a two-sided identity");
    }
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) {
            Elem ij = mul(basis_elem(i), basis_elem(j));
            for (size_t k = 0; k < n_; ++k) {
                Elem lhs = mul(ij, basis_elem(k));
                Elem rhs = mul(basis_elem(i), mul(basis_elem(j), basis_elem(k)));
                if (!eq(lhs, rhs))
                    throw domain_error("multiplication table is not associative");
            }
        }
}

QMatrix StructureConstantAlgebra::left_mult_matrix(const Elem& a) const {
    QMatrix m(n_, n_);
    for (size_t j = 0; j < n_; ++j) {
        Elem col = mul(a, basis_elem(j));
        for (size_t i = 0; i < n_; ++i) m.at(i, j) = col[i];
    }
    return m;
}

Poly StructureConstantAlgebra::min_poly(const Elem& a) const {
    // stack powers 1, a, a^2, ... until linearly dependent
    std::vector<Elem> pows{unit_};
    Elem cur = unit_;
    for (;;) {
        cur = mul(cur, a);
        QMatrix m(n_, pows.size());
        for (size_t c = 0; c < pows.size(); ++c)
            for (size_t r = 0; r < n_; ++r) m.at(r, c) = pows[c][r];
        QMatrix b(n_, 1);
        for (size_t r = 0; r < n_; ++r) b.at(r, 0) = cur[r];
        if (auto x = solve_linear(F_, m, b)) {
            std::vector<FVal> coeff(pows.size() + 1, F_.zero());
            for (size_t i = 0; i < pows.size(); ++i) coeff[i] = F_.neg(x->at(i, 0));
            coeff[pows.size()] = F_.one();
            return Poly::from(std::move(coeff));
        }
        pows.push_back(cur);
        if (pows.size() > n_ + 1) throw domain_error("min_poly did not terminate");
    }
}

std::vector<SCA::Elem> radical_basis(const SCA& E) {
    const Field& F = E.field();
    size_t n = E.dim();
    if (!F.is_rational() && F.characteristic() <= n)
        throw domain_error("radical: field F_" + std::to_string(F.characteristic()) +
                           " unsupported for dimension " + std::to_string(n) +
                           " (need p > dim)");
    // Gram matrix of the trace form T(x,y) = Tr(L_{xy}) on the basis.
    QMatrix gram(n, n);
    std::vector<QMatrix> lmats;
    lmats.reserve(n);
    for (size_t i = 0; i < n; ++i) lmats.push_back(E.left_mult_matrix(E.basis_elem(i)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            QMatrix prod = lmats[i].mul(F, lmats[j]);
            FVal tr = F.zero();
            for (size_t k = 0; k < n; ++k) tr = F.add(tr, prod.at(k, k));
            gram.at(i, j) = tr;
        }
    QMatrix ker = kernel_basis(F, gram);
    std::vector<SCA::Elem> rad;
    for (size_t c = 0; c < ker.cols(); ++c) {
        SCA::Elem v(n);
        for (size_t r = 0; r < n; ++r) v[r] = ker.at(r, c);
        rad.push_back(std::move(v));
    }
    return rad;
}

QuotientData quotient_by_ideal(const SCA& E, const std::vector<SCA::Elem>& ideal_basis) {
    const Field& F = E.field();
    size_t n = E.dim();
    // Row-reduce the ideal to find pivot coordinates; complementary
    // coordinates index the quotient basis.
    QMatrix I(ideal_basis.size(), n);
    for (size_t r = 0; r < ideal_basis.size(); ++r)
        for (size_t c = 0; c < n; ++c) I.at(r, c) = ideal_basis[r][c];
    Echelon e = echelon_form(F, I);
    std::vector<bool> in_ideal(n, false);
    for (size_t p : e.pivots) in_ideal[p] = true;
    std::vector<size_t> keep;
    for (size_t c = 0; c < n; ++c)
        if (!in_ideal[c]) keep.push_back(c);
    size_t m = keep.size();
    // projection: write e_c = (ideal part) + sum over kept coordinates
    QMatrix proj(m, n);
    for (size_t k = 0; k < m; ++k) proj.at(k, keep[k]) = F.one();
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        size_t pc = e.pivots[r];
        // e_{pc} = -(sum_{free} rref(r,free) e_free) modulo ideal
        for (size_t k = 0; k < m; ++k)
            proj.at(k, pc) = F.neg(e.rref.at(r, keep[k]));
    }
    QMatrix sec(n, m);
    for (size_t k = 0; k < m; ++k) sec.at(keep[k], k) = F.one();

    auto project = [&](const SCA::Elem& v) {
        SCA::Elem r(m, F.zero());
        for (size_t k = 0; k < m; ++k)
            for (size_t c = 0; c < n; ++c)
                if (!Field::is_zero(v[c])) r[k] = F.add(r[k], F.mul(proj.at(k, c), v[c]));
        return r;
    };

    std::map<std::pair<size_t, size_t>, SCA::Elem> table;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            SCA::Elem prod = project(E.mul(E.basis_elem(keep[i]), E.basis_elem(keep[j])));
            if (!std::all_of(prod.begin(), prod.end(), [](const FVal& x) { return Field::is_zero(x); }))
                table[{i, j}] = prod;
        }
    SCA quot(F, m, std::move(table), project(E.unit()), false);
    return QuotientData{std::move(quot), std::move(proj), std::move(sec)};
}

// Builds an idempotent from an element whose minimal polynomial admits a
// coprime split (T - r)^k * g with g(r) != 0: CRT in k[T]/(f).
static std::optional<SCA::Elem> idempotent_from_element(const SCA& E, const SCA::Elem& x,
                                                        uint64_t seed) {
    const Field& F = E.field();
    Poly f = E.min_poly(x);
    if (f.deg() < 2) return std::nullopt;
    for (const FVal& r : field_roots(F, f, seed)) {
        Poly lin = Poly::from({F.neg(r), F.one()});
        Poly a = lin, rest = f;
        // pull out the full (T-r)^k power
        Poly p1 = Poly::from({F.one()});
        while (true) {
            auto [q, rem] = poly_divmod(F, rest, lin);
            if (!rem.is_zero()) break;
            rest = q;
            p1 = poly_mul(F, p1, lin);
        }
        if (rest.deg() < 1 || p1.deg() < 1) continue; // no nontrivial coprime split
        Poly g, u, v;
        poly_xgcd(F, p1, rest, g, u, v);
        if (g.deg() != 0) continue;
        // e = v * rest evaluated at x is 1 mod (T-r)^k and 0 mod rest
        Poly epoly = poly_divmod(F, poly_mul(F, v, rest), f).second;
        SCA::Elem e = E.zero_elem();
        SCA::Elem pw = E.unit();
        for (size_t i = 0; i < epoly.c.size(); ++i) {
            e = E.add(e, E.scale(epoly.c[i], pw));
            pw = E.mul(pw, x);
        }
        if (E.is_zero(e) || E.eq(e, E.unit())) continue;
        if (!E.eq(E.mul(e, e), e)) continue;
        return e;
    }
    return std::nullopt;
}

static std::vector<SCA::Elem> center_basis(const SCA& E) {
    const Field& F = E.field();
    size_t n = E.dim();
    // solve x*e_i - e_i*x = 0 for all basis e_i
    QMatrix sys(n * n, n);
    for (size_t i = 0; i < n; ++i) {
        QMatrix L = E.left_mult_matrix(E.basis_elem(i));
        // column j of (R_i - L_i) applied to basis: e_j*e_i - e_i*e_j
        for (size_t j = 0; j < n; ++j) {
            SCA::Elem d = E.sub(E.mul(E.basis_elem(j), E.basis_elem(i)),
                                E.mul(E.basis_elem(i), E.basis_elem(j)));
            for (size_t r = 0; r < n; ++r) sys.at(i * n + r, j) = d[r];
        }
        (void)L;
    }
    QMatrix ker = kernel_basis(F, sys);
    std::vector<SCA::Elem> out;
    for (size_t c = 0; c < ker.cols(); ++c) {
        SCA::Elem v(n);
        for (size_t r = 0; r < n; ++r) v[r] = ker.at(r, c);
        out.push_back(std::move(v));
    }
    return out;
}

IdempotentResult find_nontrivial_idempotent(const SCA& E, uint64_t seed) {
    const Field& F = E.field();
    std::vector<SCA::Elem> rad = radical_basis(E);
    QuotientData qd = quotient_by_ideal(E, rad);
    const SCA& Q = qd.quotient;
    if (Q.dim() <= 1) return {IdempotentResult::Local, {}, ""};

    std::vector<SCA::Elem> candidates;
    for (auto& z : center_basis(Q)) candidates.push_back(std::move(z));
    for (size_t i = 0; i < Q.dim(); ++i) candidates.push_back(Q.basis_elem(i));
    for (size_t i = 0; i + 1 < Q.dim(); ++i)
        candidates.push_back(Q.add(Q.basis_elem(i), Q.basis_elem(i + 1)));
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 24; ++t) {
        SCA::Elem v = Q.zero_elem();
        for (size_t i = 0; i < Q.dim(); ++i)
            v[i] = F.from_long(static_cast<long>(rng() % 7) - 3);
        candidates.push_back(std::move(v));
    }

    std::optional<SCA::Elem> found;
    for (const auto& cand : candidates) {
        if (Q.is_zero(cand)) continue;
        if ((found = idempotent_from_element(Q, cand, seed))) break;
    }
    if (!found)
        return {IdempotentResult::SplitFailure, {},
                "semisimple quotient of dimension " + std::to_string(Q.dim()) +
                    " did not split over " + F.spec()};

    // lift along the radical: pick any preimage, then Newton e <- 3e^2 - 2e^3
    SCA::Elem e = E.zero_elem();
    for (size_t k = 0; k < Q.dim(); ++k) {
        if (Field::is_zero((*found)[k])) continue;
        for (size_t r = 0; r < E.dim(); ++r)
            e[r] = F.add(e[r], F.mul((*found)[k], qd.section.at(r, k)));
    }
    size_t max_iter = 2;
    while ((1u << max_iter) < E.dim() + 2) ++max_iter;
    for (size_t it = 0; it <= max_iter; ++it) {
        SCA::Elem e2 = E.mul(e, e);
        if (E.eq(e2, e)) break;
        SCA::Elem e3 = E.mul(e2, e);
        // 3e^2 - 2e^3
        e = E.sub(E.scale(F.from_long(3), e2), E.scale(F.from_long(2), e3));
    }
    if (!E.eq(E.mul(e, e), e))
        throw domain_error("idempotent lifting did not converge");
    if (E.is_zero(e) || E.eq(e, E.unit()))
        throw domain_error("idempotent lift collapsed to a trivial idempotent");
    return {IdempotentResult::Found, std::move(e), ""};
}

} // namespace gentle
