#include "bunch.hpp"
#include <algorithm>
#include <set>

namespace gentle {

void BunchOfChains::validate() const {
    std::set<std::string> seen;
    for (const auto& ix : idx)
        for (const auto& lst : {ix.E, ix.F})
            for (const auto& x : lst) {
                if (seen.count(x)) throw domain_error("bunch element repeated: " + x);
                seen.insert(x);
            }
    std::set<std::string> tied;
    for (const auto& [a, b] : ties) {
        if (!seen.count(a) || !seen.count(b))
            throw domain_error("tie references a missing element");
        if (tied.count(a) || (a != b && tied.count(b)))
            throw domain_error("element in two ties: " + a);
        tied.insert(a);
        tied.insert(b);
    }
}

bool BunchOfChains::is_semichain() const {
    for (const auto& [a, b] : ties)
        if (a == b) return true;
    return false;
}

BunchOfChains::Loc BunchOfChains::locate(const std::string& x) const {
    for (size_t i = 0; i < idx.size(); ++i) {
        for (size_t k = 0; k < idx[i].E.size(); ++k)
            if (idx[i].E[k] == x) return {(int)i, 0, (int)k};
        for (size_t k = 0; k < idx[i].F.size(); ++k)
            if (idx[i].F[k] == x) return {(int)i, 1, (int)k};
    }
    return {};
}

std::optional<std::string> BunchOfChains::partner(const std::string& x) const {
    for (const auto& [a, b] : ties) {
        if (a == x) return b;
        if (b == x) return a;
    }
    return std::nullopt;
}

bool BunchOfChains::dash(const std::string& x, const std::string& y) const {
    Loc a = locate(x), b = locate(y);
    return a.index >= 0 && a.index == b.index && a.side != b.side;
}

std::string BunchOfChains::class_of(const std::string& x) const {
    auto p = partner(x);
    if (!p || *p == x) return x;
    return std::min(x, *p) + "=" + std::max(x, *p);
}

BunchOfChains bunch_example_chains() {
    BunchOfChains B;
    B.idx = {{"1", {"c1", "d1"}, {"a1"}}, {"2", {"c2", "d2"}, {"a2"}}};
    B.ties = {{"a1", "a2"}, {"c1", "c2"}, {"d1", "d2"}};
    B.validate();
    return B;
}

BunchOfChains bunch_example_semichains() {
    BunchOfChains B;
    B.idx = {{"1", {"c1", "d1"}, {"a"}}, {"2", {"c2", "d2"}, {"b"}}};
    B.ties = {{"a", "a"}, {"b", "b"}, {"c1", "c2"}, {"d1", "d2"}};
    B.validate();
    return B;
}

BunchOfChains bunch_example_chessboard(int n) {
    BunchOfChains B;
    BunchIndex ix{"*", {}, {}};
    for (int k = 1; k <= n; ++k) ix.E.push_back("x" + std::to_string(k));
    // y_n < ... < y_1
    for (int k = n; k >= 1; --k) ix.F.push_back("y" + std::to_string(k));
    B.idx = {ix};
    for (int k = 1; k <= n; ++k)
        B.ties.push_back({"x" + std::to_string(k), "y" + std::to_string(k)});
    B.validate();
    return B;
}

std::string u_symbol(const Omega& om, int r) {
    return "u" + omega_str(om) + "@" + std::to_string(r);
}

std::string q_symbol(const Omega& om, int r, int partner, int partner_r) {
    return "q" + omega_str(om) + "@" + std::to_string(r) + "^(" + std::to_string(om.i) + "," +
           std::to_string(partner) + ")@" + std::to_string(partner_r);
}

BunchOfChains bunch_of_datum(const ValidatedDatum& d, int window_lo, int window_hi) {
    if (window_lo > window_hi) throw domain_error("empty degree window");
    BunchOfChains B;
    for (int r = window_lo; r <= window_hi; ++r)
        for (const Omega& om : d.omega_list()) {
            BunchIndex ix;
            ix.name = omega_str(om) + "@" + std::to_string(r);
            ix.E = {u_symbol(om, r)};
            int m = d.m()[om.i - 1];
            // weight order of the symbols (source-end labels descend; see
            // stripe_rank for why the ascending variant is wrong)
            for (int b = om.j - 1; b >= 1; --b) ix.F.push_back(q_symbol(om, r, b, r + 1));
            ix.F.push_back(q_symbol(om, r, m + 1, r - 1));
            for (int a = m; a > om.j; --a) ix.F.push_back(q_symbol(om, r, a, r - 1));
            B.idx.push_back(std::move(ix));
        }
    // ties: u ~ u across the datum relation, and the two symbols of each
    // two-term summand (both ends inside the window)
    for (int r = window_lo; r <= window_hi; ++r)
        for (const auto& rel : d.raw().relations) {
            if (rel.first == rel.second)
                B.ties.push_back({u_symbol(rel.first, r), u_symbol(rel.first, r)});
            else
                B.ties.push_back({u_symbol(rel.first, r), u_symbol(rel.second, r)});
        }
    for (int r = window_lo; r <= window_hi; ++r)
        for (const Omega& om : d.omega_list()) {
            int m = d.m()[om.i - 1];
            for (int a = om.j + 1; a <= m; ++a)
                if (r - 1 >= window_lo)
                    B.ties.push_back(
                        {q_symbol(om, r, a, r - 1), q_symbol({om.i, a}, r - 1, om.j, r)});
        }
    B.validate();
    return B;
}

void validate_word(const BunchOfChains& B, const FullWord& w) {
    if (w.x.empty()) throw domain_error("empty word");
    size_t need = w.cyclic ? w.x.size() : w.x.size() - 1;
    if (w.rho.size() != need) throw domain_error("word relation list has wrong length");
    if (w.cyclic && w.x.size() % 2 != 0) throw domain_error("cyclic word of odd length");
    for (const auto& x : w.x)
        if (!B.has(x)) throw domain_error("word element missing from the bunch: " + x);
    for (size_t k = 0; k < need; ++k) {
        const std::string &a = w.x[k], &b = w.x[(k + 1) % w.x.size()];
        if (w.rho[k] == '~') {
            auto p = B.partner(a);
            if (!p || *p != b) throw domain_error("~ between untied elements");
        } else if (w.rho[k] == '-') {
            if (!B.dash(a, b)) throw domain_error("- between elements of unrelated chains");
        } else {
            throw domain_error("bad relation symbol in word");
        }
        if (k + 1 < need && w.rho[k] == w.rho[k + 1])
            throw domain_error("word relations do not alternate");
    }
    if (w.cyclic) {
        if (w.rho.front() != '~' || w.rho.back() != '-')
            throw domain_error("cyclic word must start with ~ and close with -");
    } else {
        if (B.partner(w.x.front()) && w.rho.front() != '~')
            throw domain_error("tied first element must start with ~");
        if (B.partner(w.x.back()) && w.rho.back() != '~')
            throw domain_error("tied last element must end with ~");
    }
}

FullWord reverse_word(const FullWord& w) {
    FullWord r = w;
    std::reverse(r.x.begin(), r.x.end());
    std::reverse(r.rho.begin(), r.rho.end());
    if (w.cyclic) {
        // reversed rho starts with the closing dash; re-anchor on the ~
        std::rotate(r.rho.begin(), r.rho.begin() + 1, r.rho.end());
    }
    return r;
}

FullWord shift_word(const FullWord& w, int k) {
    if (!w.cyclic) throw domain_error("shift of a non-cyclic word");
    FullWord r = w;
    int n = (int)w.x.size();
    int s = ((2 * k) % n + n) % n;
    std::rotate(r.x.begin(), r.x.begin() + s, r.x.end());
    std::rotate(r.rho.begin(), r.rho.begin() + s, r.rho.end());
    return r;
}

int sigma_pair(const BunchOfChains& B, const std::string& a, const std::string& b) {
    auto la = B.locate(a), lb = B.locate(b);
    return la.side == lb.side ? 0 : 1;
}

int sigma_shift(const BunchOfChains& B, const FullWord& w, int k) {
    int s = 0;
    for (int j = 1; j <= k; ++j) s += sigma_pair(B, w.x[(2 * j - 2) % w.x.size()],
                                                 w.x[(2 * j - 1) % w.x.size()]);
    return s;
}

namespace {

// positions of [w]: one per ~-pair plus one per untied boundary element
struct Positions {
    std::vector<std::vector<size_t>> letters; // word letter indices per position
    std::vector<std::string> cls;
    int pos_of_letter(size_t k) const {
        for (size_t p = 0; p < letters.size(); ++p)
            for (size_t l : letters[p])
                if (l == k) return (int)p;
        return -1;
    }
};

Positions word_positions(const BunchOfChains& B, const FullWord& w) {
    Positions P;
    size_t k = 0;
    while (k < w.x.size()) {
        bool pair = false;
        if (!w.cyclic) {
            pair = k + 1 < w.x.size() && w.rho[k] == '~';
        } else {
            pair = w.rho[k] == '~';
        }
        if (pair) {
            P.letters.push_back({k, k + 1});
            P.cls.push_back(B.class_of(w.x[k]));
            k += 2;
        } else {
            P.letters.push_back({k});
            P.cls.push_back(B.class_of(w.x[k]));
            k += 1;
        }
    }
    return P;
}

RepX rep_of_word(const BunchOfChains& B, const FullWord& w, int mult, const Field& F,
                 const FVal* pi) {
    validate_word(B, w);
    if (B.is_semichain())
        throw domain_error("representations are built for bunches of chains only");
    if (w.cyclic && !pi) throw domain_error("cyclic word needs an eigenvalue");
    RepX R;
    R.bunch = &B;
    R.mult = mult;
    Positions P = word_positions(B, w);
    R.position_class = P.cls;
    size_t ndash = w.cyclic ? w.x.size() / 2 : 0;
    if (!w.cyclic) {
        for (char r : w.rho)
            if (r == '-') ++ndash;
    }
    (void)ndash;
    size_t need = w.cyclic ? w.x.size() : w.x.size() - 1;
    for (size_t k = 0; k < need; ++k) {
        if (w.rho[k] != '-') continue;
        size_t k2 = (k + 1) % w.x.size();
        const std::string &a = w.x[k], &b = w.x[k2];
        auto la = B.locate(a);
        const std::string& e = la.side == 0 ? a : b;
        const std::string& f = la.side == 0 ? b : a;
        size_t epos = (size_t)P.pos_of_letter(la.side == 0 ? k : k2);
        size_t fpos = (size_t)P.pos_of_letter(la.side == 0 ? k2 : k);
        bool closing = w.cyclic && k == need - 1;
        QMatrix block(mult, mult);
        for (int t = 0; t < mult; ++t) {
            block.at(t, t) = closing ? *pi : F.one();
            if (closing && t > 0) block.at(t, t - 1) = F.one();
        }
        R.entries.push_back({epos, fpos, f, e, "w(" + f + "," + e + ")", std::move(block)});
    }
    return R;
}

} // namespace

RepX string_rep(const BunchOfChains& B, const FullWord& v) {
    if (v.cyclic) throw domain_error("string representation of a cyclic word");
    Field F;
    return rep_of_word(B, v, 1, F, nullptr);
}

RepX band_rep(const BunchOfChains& B, const FullWord& w, int mult, const Field& F,
              const FVal& pi) {
    if (!w.cyclic) throw domain_error("band representation needs a cyclic word");
    if (Field::is_zero(pi)) throw domain_error("band eigenvalue must be nonzero");
    // non-periodic check on the ~-pair level
    size_t n = w.x.size() / 2;
    for (size_t k = 1; k < n; ++k) {
        FullWord s = shift_word(w, (int)k);
        if (s.x == w.x && s.rho == w.rho) throw domain_error("periodic band word");
    }
    return rep_of_word(B, w, mult, F, &pi);
}

std::vector<IndexMatrixView> index_matrices(const RepX& R) {
    const BunchOfChains& B = *R.bunch;
    Field F;
    // occurrences of each element per index
    std::map<std::string, std::vector<std::pair<std::string, size_t>>> rows, cols;
    auto note = [&](const std::string& elem, size_t pos) {
        auto loc = B.locate(elem);
        const BunchIndex& ix = B.idx[loc.index];
        auto& dst = loc.side == 1 ? rows[ix.name] : cols[ix.name];
        dst.push_back({elem, pos});
    };
    // gather occurrences from the entry generators (every dash touches one E
    // and one F element); also count untouched positions via position_class
    for (const auto& e : R.entries) {
        note(e.felem, e.col);
        note(e.eelem, e.row);
    }
    std::vector<IndexMatrixView> out;
    for (const auto& ix : B.idx) {
        auto r = rows.find(ix.name);
        auto c = cols.find(ix.name);
        if (r == rows.end() && c == cols.end()) continue;
        IndexMatrixView v;
        v.index = ix.name;
        if (r != rows.end()) v.rows = r->second;
        if (c != cols.end()) v.cols = c->second;
        // order rows by chain position of the element, then word position
        auto chain_slot = [&](const std::string& el) { return B.locate(el).slot; };
        std::sort(v.rows.begin(), v.rows.end(), [&](const auto& a, const auto& b) {
            if (chain_slot(a.first) != chain_slot(b.first))
                return chain_slot(a.first) < chain_slot(b.first);
            return a.second < b.second;
        });
        std::sort(v.cols.begin(), v.cols.end(), [&](const auto& a, const auto& b) {
            return a.second < b.second;
        });
        v.theta = QMatrix(v.rows.size() * R.mult, v.cols.size() * R.mult);
        for (const auto& e : R.entries) {
            const std::string &f = e.felem, &el = e.eelem;
            if (B.idx[B.locate(f).index].name != ix.name) continue;
            size_t ri = 0, ci = 0;
            bool fr = false, fc = false;
            for (size_t t = 0; t < v.rows.size(); ++t)
                if (v.rows[t] == std::make_pair(f, e.col)) { ri = t; fr = true; }
            for (size_t t = 0; t < v.cols.size(); ++t)
                if (v.cols[t] == std::make_pair(el, e.row)) { ci = t; fc = true; }
            if (!fr || !fc) throw domain_error("index view misaligned");
            for (int a = 0; a < R.mult; ++a)
                for (int b = 0; b < R.mult; ++b)
                    v.theta.at(ri * R.mult + a, ci * R.mult + b) = e.block.at(a, b);
        }
        out.push_back(std::move(v));
        (void)F;
    }
    return out;
}

SCA rep_end_algebra(const Field& F, const RepX& R) {
    const BunchOfChains& B = *R.bunch;
    if (B.is_semichain()) throw domain_error("End computation supports chain bunches only");
    size_t npos = R.position_class.size();
    int m = R.mult;
    // predecessor elements of each position's class
    std::vector<std::vector<std::string>> preds(npos);
    for (size_t p = 0; p < npos; ++p) {
        const std::string& cls = R.position_class[p];
        auto eq = cls.find('=');
        if (eq == std::string::npos) preds[p] = {cls};
        else preds[p] = {cls.substr(0, eq), cls.substr(eq + 1)};
    }
    // Generators of Hom(Z, Z).  End of a glued object is k (the tied
    // identities coincide, as in the worked bunch examples), so one identity
    // generator per pair of equal-class positions, plus the strictly
    // increasing p_{vu} between predecessors in one chain.  "id" acts as the
    // identity on every predecessor simultaneously.
    struct Gen {
        size_t src_pos, tgt_pos;
        int src_copy, tgt_copy;
        std::string u, v; // "id","id" for the glued identity
    };
    std::vector<Gen> gens;
    for (size_t p1 = 0; p1 < npos; ++p1)
        for (size_t p2 = 0; p2 < npos; ++p2) {
            bool same_class = R.position_class[p1] == R.position_class[p2];
            for (int c1 = 0; c1 < m; ++c1)
                for (int c2 = 0; c2 < m; ++c2) {
                    if (same_class) gens.push_back({p1, p2, c1, c2, "id", "id"});
                    for (const auto& u : preds[p1])
                        for (const auto& v : preds[p2]) {
                            auto lu = B.locate(u), lv = B.locate(v);
                            if (lu.index != lv.index || lu.side != lv.side) continue;
                            if (lu.slot >= lv.slot) continue; // strictly increasing
                            gens.push_back({p1, p2, c1, c2, u, v});
                        }
                }
        }
    // theta components: entry (row = E position, col = F position), gen w(f, e):
    // an element of B(Z_{cls(e)}, Z_{cls(f)})
    // equations: (f theta - theta f) = 0, coefficients on each (src copy, tgt
    // copy, omega_{f', e'}) with f' in F, e' in E
    std::map<std::tuple<size_t, int, size_t, int, std::string, std::string>, size_t> eq_rows;
    auto row_id = [&](size_t sp, int sc, size_t tp, int tc, const std::string& f,
                      const std::string& e) {
        auto key = std::make_tuple(sp, sc, tp, tc, f, e);
        auto it = eq_rows.find(key);
        if (it != eq_rows.end()) return it->second;
        size_t id = eq_rows.size();
        eq_rows[key] = id;
        return id;
    };
    std::vector<std::vector<std::pair<size_t, FVal>>> cols(gens.size());
    for (size_t g = 0; g < gens.size(); ++g) {
        const Gen& gen = gens[g];
        for (const auto& ent : R.entries) {
            const std::string &f = ent.felem, &e = ent.eelem;
            // f theta: gen source must sit at theta's target side: theta maps
            // (E position ent.row... the component lives in B(Z at e-position,
            // Z at f-position); e-position = ent.row? The entry was stored as
            // (row = E side, col = F side): source position = ent.row (E),
            // target = ent.col (F).
            size_t src = ent.row, tgt = ent.col;
            // post-compose: p_{v u} needs u = f (the F element); the glued
            // identity composes with everything on its positions
            if (gen.src_pos == tgt && (gen.u == f || gen.u == "id")) {
                std::string vlbl = gen.u == "id" ? f : gen.v;
                for (int c = 0; c < m; ++c) {
                    if (Field::is_zero(ent.block.at(gen.src_copy, c))) continue;
                    size_t rid = row_id(src, c, gen.tgt_pos, gen.tgt_copy, vlbl, e);
                    cols[g].push_back({rid, ent.block.at(gen.src_copy, c)});
                }
            }
            // pre-compose: p_{v u} needs v = e (the E element)
            if (gen.tgt_pos == src && (gen.v == e || gen.v == "id")) {
                std::string ulbl = gen.v == "id" ? e : gen.u;
                for (int c = 0; c < m; ++c) {
                    if (Field::is_zero(ent.block.at(c, gen.tgt_copy))) continue;
                    size_t rid = row_id(gen.src_pos, gen.src_copy, tgt, c, f, ulbl);
                    cols[g].push_back({rid, F.neg(ent.block.at(c, gen.tgt_copy))});
                }
            }
        }
    }
    QMatrix M(eq_rows.size(), gens.size());
    for (size_t g = 0; g < gens.size(); ++g)
        for (const auto& [r, c] : cols[g]) M.at(r, g) = F.add(M.at(r, g), c);
    QMatrix K = kernel_basis(F, M);
    size_t n = K.cols();
    // composition of solution vectors through generator-level composition
    auto compose = [&](const QMatrix& a, size_t ca, const QMatrix& b, size_t cb) {
        // (a after b): p_{v'u'} . p_{vu} with matching middle
        std::map<std::tuple<size_t, size_t, int, int, std::string, std::string>, FVal> acc;
        for (size_t g1 = 0; g1 < gens.size(); ++g1) {
            if (Field::is_zero(b.at(g1, cb))) continue;
            for (size_t g2 = 0; g2 < gens.size(); ++g2) {
                if (Field::is_zero(a.at(g2, ca))) continue;
                const Gen &x = gens[g1], &y = gens[g2]; // x first, then y
                if (x.tgt_pos != y.src_pos || x.tgt_copy != y.src_copy) continue;
                std::string u, v;
                if (x.u == "id" && y.u == "id") { u = "id"; v = "id"; }
                else if (x.u == "id") { u = y.u; v = y.v; }
                else if (y.u == "id") { u = x.u; v = x.v; }
                else if (x.v == y.u) { u = x.u; v = y.v; }
                else continue; // strict paths that do not chain compose to zero
                auto key = std::make_tuple(x.src_pos, y.tgt_pos, x.src_copy, y.tgt_copy, u, v);
                FVal add = F.mul(b.at(g1, cb), a.at(g2, ca));
                auto it = acc.find(key);
                if (it == acc.end()) acc[key] = add;
                else it->second = F.add(it->second, add);
            }
        }
        QMatrix vec(gens.size(), 1);
        for (size_t g = 0; g < gens.size(); ++g) {
            auto key = std::make_tuple(gens[g].src_pos, gens[g].tgt_pos, gens[g].src_copy,
                                       gens[g].tgt_copy, gens[g].u, gens[g].v);
            auto it = acc.find(key);
            if (it != acc.end()) {
                vec.at(g, 0) = it->second;
                acc.erase(it);
            }
        }
        if (!acc.empty())
            for (const auto& [k, val] : acc)
                if (!Field::is_zero(val))
                    throw domain_error("End composition left the generator span");
        return vec;
    };
    // express a generator-space vector in the kernel basis
    auto express = [&](const QMatrix& vec) {
        auto x = solve_linear(F, K, vec);
        if (!x) throw domain_error("End composition not in End");
        return *x;
    };
    std::map<std::pair<size_t, size_t>, SCA::Elem> table;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            QMatrix prod = compose(K, i, K, j);
            QMatrix coord = express(prod);
            SCA::Elem el(n, F.zero());
            bool nz = false;
            for (size_t t = 0; t < n; ++t) {
                el[t] = coord.at(t, 0);
                nz = nz || !Field::is_zero(el[t]);
            }
            if (nz) table[{i, j}] = std::move(el);
        }
    // identity element
    QMatrix idv(gens.size(), 1);
    for (size_t g = 0; g < gens.size(); ++g)
        if (gens[g].src_pos == gens[g].tgt_pos && gens[g].src_copy == gens[g].tgt_copy &&
            gens[g].u == gens[g].v)
            idv.at(g, 0) = F.one();
    QMatrix idc = express(idv);
    SCA::Elem unit(n, F.zero());
    for (size_t t = 0; t < n; ++t) unit[t] = idc.at(t, 0);
    return SCA(F, n, std::move(table), std::move(unit), true);
}

namespace {

void push_segment_letters(const ValidatedDatum& d, const Segment& s, FullWord& w) {
    int m = d.m()[s.i - 1];
    if (is_stalk(d, s)) {
        w.x.push_back(q_symbol({s.i, s.b}, s.r, m + 1, s.r - 1));
        return;
    }
    std::string low = q_symbol({s.i, s.b}, s.r, s.a, s.r - 1);
    std::string high = q_symbol({s.i, s.a}, s.r - 1, s.b, s.r);
    if (s.low_first) {
        w.x.push_back(low);
        w.x.push_back(high);
    } else {
        w.x.push_back(high);
        w.x.push_back(low);
    }
    w.rho.push_back('~');
}

} // namespace

FullWord unreduce_string(const ValidatedDatum& d, const StringDatum& v) {
    validate_string(d, v);
    FullWord w;
    // leading untied u for a proper untied first end
    if (!is_stalk(d, v.segs.front())) {
        WordEnd e = entry_end(d, v.segs.front());
        w.x.push_back(u_symbol(e.om, e.r));
        w.rho.push_back('-');
    }
    for (size_t k = 0; k < v.segs.size(); ++k) {
        if (k > 0) {
            // the tie between facing ends
            WordEnd e = exit_end(d, v.segs[k - 1]);
            WordEnd f = entry_end(d, v.segs[k]);
            w.rho.push_back('-');
            w.x.push_back(u_symbol(e.om, e.r));
            w.rho.push_back('~');
            w.x.push_back(u_symbol(f.om, f.r));
            w.rho.push_back('-');
        }
        push_segment_letters(d, v.segs[k], w);
    }
    if (!is_stalk(d, v.segs.back())) {
        WordEnd e = exit_end(d, v.segs.back());
        w.rho.push_back('-');
        w.x.push_back(u_symbol(e.om, e.r));
    }
    return w;
}

FullWord unreduce_band(const ValidatedDatum& d, const BandDatum& v) {
    validate_band(d, v);
    FullWord w;
    w.cyclic = true;
    for (size_t k = 0; k < v.segs.size(); ++k) {
        push_segment_letters(d, v.segs[k], w);
        WordEnd e = exit_end(d, v.segs[k]);
        WordEnd f = entry_end(d, v.segs[(k + 1) % v.segs.size()]);
        w.rho.push_back('-');
        w.x.push_back(u_symbol(e.om, e.r));
        w.rho.push_back('~');
        w.x.push_back(u_symbol(f.om, f.r));
        if (k + 1 < v.segs.size()) w.rho.push_back('-');
    }
    w.rho.push_back('-'); // closes back into the first letter
    return w;
}

void cross_check_string(const AlgebraContext& ctx, const StringDatum& v) {
    if (!ctx.datum) throw domain_error("cross check needs a datum context");
    const ValidatedDatum& d = *ctx.datum;
    // word side
    int wlo = 0, whi = 0;
    bool first = true;
    for (const auto& s : v.segs) {
        int lo = is_stalk(d, s) ? s.r : s.r - 1;
        if (first) { wlo = lo; whi = s.r; first = false; }
        wlo = std::min(wlo, lo);
        whi = std::max(whi, s.r);
    }
    BunchOfChains B = bunch_of_datum(d, wlo, whi);
    RepX R = string_rep(B, unreduce_string(d, v));
    auto views = index_matrices(R);
    // complex side
    DecoratedMatrices dm = decorated_matrices(triple_of(ctx, string_complex(ctx, v)));
    // compare block by block: same stripe row multisets
    for (const auto& b : dm.blocks) {
        if (b.theta.rows() == 0 && b.theta.cols() == 0) continue;
        std::string iname = omega_str(b.pos) + "@" + std::to_string(b.r);
        const IndexMatrixView* view = nullptr;
        for (const auto& vw : views)
            if (vw.index == iname) view = &vw;
        if (!view) throw domain_error("word side misses block " + iname);
        if (view->theta.rows() != b.theta.rows() || view->theta.cols() != b.theta.cols())
            throw domain_error("block size mismatch at " + iname);
        // stripe labels: word side rows carry the q-symbol; decorated side
        // carries (partner, dir).  Compare row multisets per stripe.
        int m = ctx.m[b.pos.i - 1];
        auto stripe_of_sym = [&](const std::string& sym) {
            // q(i,j)@r^(i,partner)@rr
            size_t c = sym.find("^(");
            std::string tail = sym.substr(c + 2);
            size_t comma = tail.find(',');
            size_t close = tail.find(')');
            int partner = std::stoi(tail.substr(comma + 1, close - comma - 1));
            int rr = std::stoi(tail.substr(close + 2));
            return StripeLabel{partner, rr < b.r ? -1 : +1};
        };
        std::map<int, std::multiset<std::vector<std::string>>> wrows, drows;
        for (size_t rr = 0; rr < view->theta.rows(); ++rr) {
            StripeLabel l = stripe_of_sym(view->rows[rr].first);
            std::vector<std::string> row;
            for (size_t c = 0; c < view->theta.cols(); ++c)
                row.push_back(Field::to_string(view->theta.at(rr, c)));
            wrows[stripe_rank(l, b.pos.j, m)].insert(row);
        }
        for (size_t rr = 0; rr < b.theta.rows(); ++rr) {
            std::vector<std::string> row;
            for (size_t c = 0; c < b.theta.cols(); ++c)
                row.push_back(Field::to_string(b.theta.at(rr, c)));
            drows[stripe_rank(b.row_label[rr], b.pos.j, m)].insert(row);
        }
        if (wrows != drows)
            throw domain_error("stripe rows disagree at " + iname);
    }
}

} // namespace gentle
