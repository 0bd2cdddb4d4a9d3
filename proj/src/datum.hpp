#pragma once

#include "field.hpp"
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gentle {

// A position (i, j): chain i, slot j.  1-based throughout, matching the
// usual (i, j) conventions for these datums.
struct Omega {
    int i = 0, j = 0;
    auto operator<=>(const Omega&) const = default;
};

std::string omega_str(const Omega& x);

// The combinatorial datum (m, ~): chain lengths m_1..m_t (each >= 2) and a
// symmetric relation on Omega in which every element occurs at most once.
// A pair {x, x} encodes a self-equivalence.
struct Datum {
    std::vector<int> m;
    std::vector<std::pair<Omega, Omega>> relations; // stored with first <= second

    int t() const { return static_cast<int>(m.size()); }
    size_t omega_size() const;
};

class ValidatedDatum {
public:
    static ValidatedDatum validate(const Datum& raw);

    const Datum& raw() const { return d_; }
    const std::vector<int>& m() const { return d_.m; }
    int t() const { return d_.t(); }
    bool is_gentle() const { return gentle_; }

    bool in_omega(const Omega& x) const;
    // The unique partner of x under ~, if any (equal to x for a self-tie).
    std::optional<Omega> partner(const Omega& x) const;
    bool is_tied(const Omega& x) const { return partner(x).has_value(); }
    bool is_self_tied(const Omega& x) const;

    std::vector<Omega> omega_list() const;

private:
    Datum d_;
    bool gentle_ = true;
};

enum class VertexType { First, Second, Third };

// One element of the vertex set: predecessors in Omega plus a sign for
// second-type (blown-up) vertices.
struct VertexClass {
    VertexType type;
    std::vector<Omega> preds; // sorted; size 2 for first type, else 1
    int sign = 0;             // +1 / -1 for second type, 0 otherwise
    auto operator<=>(const VertexClass&) const = default;
};

struct IndexSets {
    std::vector<Omega> omega;
    std::vector<std::pair<Omega, int>> omega_bar; // sign 0 = plain, +-1 = blown halves
    std::vector<VertexClass> omega_tilde;
    std::vector<std::vector<Omega>> omega_hat;    // equivalence classes of ~
};

IndexSets build_index_sets(const ValidatedDatum& d);

// Canonical label "g<k>" of the vertex class containing x, plus helpers.
struct VertexTable {
    std::vector<VertexClass> classes; // canonical order
    int class_of(const Omega& x, int sign = 0) const;
    std::string label(int idx) const { return "g" + std::to_string(idx); }
    std::string describe(int idx) const;
};

VertexTable vertex_table(const ValidatedDatum& d);

// tau(i, j) = (k, l) when j < m_i and (i, j+1) ~ (k, l); absent otherwise.
std::optional<Omega> tau(const ValidatedDatum& d, const Omega& x);

// Non-periodic tau-closed cycles, one per rotation class (canonical rotation:
// lexicographically least element first).
std::vector<std::vector<Omega>> special_cycles(const ValidatedDatum& d);

} // namespace gentle
