#include "datum.hpp"
#include <algorithm>
#include <map>

namespace gentle {

std::string omega_str(const Omega& x) {
    return "(" + std::to_string(x.i) + "," + std::to_string(x.j) + ")";
}

size_t Datum::omega_size() const {
    size_t n = 0;
    for (int mi : m) n += static_cast<size_t>(mi);
    return n;
}

ValidatedDatum ValidatedDatum::validate(const Datum& raw) {
    ValidatedDatum v;
    v.d_ = raw;
    if (raw.m.empty()) throw domain_error("datum: m must be nonempty");
    for (size_t i = 0; i < raw.m.size(); ++i)
        if (raw.m[i] < 2)
            throw domain_error("datum: m_" + std::to_string(i + 1) + " = " +
                               std::to_string(raw.m[i]) + " < 2");
    auto check_range = [&](const Omega& x) {
        if (x.i < 1 || x.i > raw.t() || x.j < 1 || x.j > raw.m[x.i - 1])
            throw domain_error("datum: index " + omega_str(x) + " out of range");
    };
    std::set<Omega> seen;
    auto mark = [&](const Omega& x) {
        if (seen.count(x))
            throw domain_error("datum: " + omega_str(x) + " appears in two relation pairs");
        seen.insert(x);
    };
    for (auto& rel : v.d_.relations) {
        check_range(rel.first);
        check_range(rel.second);
        if (rel.second < rel.first) std::swap(rel.first, rel.second);
        mark(rel.first);
        if (rel.first != rel.second) mark(rel.second);
        else v.gentle_ = false;
    }
    std::sort(v.d_.relations.begin(), v.d_.relations.end());
    return v;
}

bool ValidatedDatum::in_omega(const Omega& x) const {
    return x.i >= 1 && x.i <= t() && x.j >= 1 && x.j <= d_.m[x.i - 1];
}

std::optional<Omega> ValidatedDatum::partner(const Omega& x) const {
    for (const auto& rel : d_.relations) {
        if (rel.first == x) return rel.second;
        if (rel.second == x) return rel.first;
    }
    return std::nullopt;
}

bool ValidatedDatum::is_self_tied(const Omega& x) const {
    auto p = partner(x);
    return p && *p == x;
}

std::vector<Omega> ValidatedDatum::omega_list() const {
    std::vector<Omega> out;
    for (int i = 1; i <= t(); ++i)
        for (int j = 1; j <= d_.m[i - 1]; ++j) out.push_back({i, j});
    return out;
}

IndexSets build_index_sets(const ValidatedDatum& d) {
    IndexSets s;
    s.omega = d.omega_list();
    for (const auto& x : s.omega) {
        if (d.is_self_tied(x)) {
            s.omega_bar.push_back({x, +1});
            s.omega_bar.push_back({x, -1});
        } else {
            s.omega_bar.push_back({x, 0});
        }
    }
    std::set<Omega> done;
    for (const auto& x : s.omega) {
        if (done.count(x)) continue;
        auto p = d.partner(x);
        if (!p) {
            s.omega_tilde.push_back({VertexType::Third, {x}, 0});
            s.omega_hat.push_back({x});
            done.insert(x);
        } else if (*p == x) {
            s.omega_tilde.push_back({VertexType::Second, {x}, +1});
            s.omega_tilde.push_back({VertexType::Second, {x}, -1});
            s.omega_hat.push_back({x});
            done.insert(x);
        } else {
            std::vector<Omega> cls{x, *p};
            std::sort(cls.begin(), cls.end());
            s.omega_tilde.push_back({VertexType::First, cls, 0});
            s.omega_hat.push_back(cls);
            done.insert(x);
            done.insert(*p);
        }
    }
    std::sort(s.omega_tilde.begin(), s.omega_tilde.end(),
              [](const VertexClass& a, const VertexClass& b) {
                  if (a.preds != b.preds) return a.preds < b.preds;
                  return a.sign > b.sign; // + before -
              });
    return s;
}

int VertexTable::class_of(const Omega& x, int sign) const {
    for (size_t k = 0; k < classes.size(); ++k) {
        const auto& c = classes[k];
        if (std::find(c.preds.begin(), c.preds.end(), x) == c.preds.end()) continue;
        if (c.type == VertexType::Second && c.sign != sign) continue;
        return static_cast<int>(k);
    }
    throw domain_error("no vertex class contains " + omega_str(x));
}

std::string VertexTable::describe(int idx) const {
    const auto& c = classes[idx];
    std::string s;
    for (size_t k = 0; k < c.preds.size(); ++k) {
        if (k) s += "=";
        s += omega_str(c.preds[k]);
    }
    if (c.type == VertexType::Second) s += c.sign > 0 ? "+" : "-";
    return s;
}

VertexTable vertex_table(const ValidatedDatum& d) {
    return VertexTable{build_index_sets(d).omega_tilde};
}

std::optional<Omega> tau(const ValidatedDatum& d, const Omega& x) {
    if (!d.in_omega(x)) throw domain_error("tau: " + omega_str(x) + " not in Omega");
    if (x.j >= d.m()[x.i - 1]) return std::nullopt;
    return d.partner({x.i, x.j + 1});
}

std::vector<std::vector<Omega>> special_cycles(const ValidatedDatum& d) {
    std::vector<std::vector<Omega>> cycles;
    std::set<Omega> in_some_cycle;
    for (const Omega& start : d.omega_list()) {
        if (in_some_cycle.count(start)) continue;
        // follow tau; if we return to an already-visited element of this walk,
        // the closed part is a cycle
        std::vector<Omega> walk{start};
        std::map<Omega, size_t> pos{{start, 0}};
        Omega cur = start;
        for (;;) {
            auto nxt = tau(d, cur);
            if (!nxt) break;
            auto it = pos.find(*nxt);
            if (it != pos.end()) {
                std::vector<Omega> cyc(walk.begin() + it->second, walk.end());
                // canonical rotation: least element first
                size_t least = 0;
                for (size_t k = 1; k < cyc.size(); ++k)
                    if (cyc[k] < cyc[least]) least = k;
                std::rotate(cyc.begin(), cyc.begin() + least, cyc.end());
                if (!in_some_cycle.count(cyc[0])) {
                    for (const auto& x : cyc) in_some_cycle.insert(x);
                    cycles.push_back(std::move(cyc));
                }
                break;
            }
            pos[*nxt] = walk.size();
            walk.push_back(*nxt);
            cur = *nxt;
        }
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

} // namespace gentle
