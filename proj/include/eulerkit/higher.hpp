#pragma once

// Finite bicategories and recursive hom-data towers.
//
// FinBicat keeps the full structure (hom-categories, horizontal composition,
// units, associators, unitors) so internal equivalence can be decided.
// EulerDatum keeps only nested hom sizes, which is all χ needs at any level.

#include "eulerkit/fincat.hpp"
#include "eulerkit/magnitude.hpp"
#include "eulerkit/matrix.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eulerkit {

/// Raised when an adjacency entry needs the χ of a hom that has none.
class UndefinedEuler : public std::runtime_error {
public:
    UndefinedEuler(std::vector<std::pair<std::string, std::string>> path, std::string reason)
        : std::runtime_error(describe(path, reason)), path_(std::move(path)), reason_(std::move(reason)) {}

    /// Pairs of cells from the outermost level inwards.
    const std::vector<std::pair<std::string, std::string>>& path() const { return path_; }
    std::size_t depth() const { return path_.size(); }
    const std::string& reason() const { return reason_; }

private:
    static std::string describe(const std::vector<std::pair<std::string, std::string>>& path,
                                const std::string& reason) {
        std::string s = "hom-EC undefined at depth " + std::to_string(path.size());
        if (!path.empty()) s += ", pair (" + path.back().first + "," + path.back().second + ")";
        if (path.size() > 1) {
            s += ", path";
            for (const auto& [a, b] : path) s += " (" + a + "," + b + ")";
        }
        if (!reason.empty()) s += ": " + reason;
        return s;
    }

    std::vector<std::pair<std::string, std::string>> path_;
    std::string reason_;
};

// ---------------------------------------------------------------------------
// Bicategories

/// Horizontal composition A(y,z) × A(x,y) -> A(x,z) for one triple (x,y,z).
/// one_cells[g * |ob A(x,y)| + f] and two_cells[β * |mor A(x,y)| + α];
/// npos marks an omitted entry.
struct HcompTable {
    std::vector<std::size_t> one_cells;
    std::vector<std::size_t> two_cells;
};

/// (x, y, z, w, h, g, f) with f ∈ A(x,y), g ∈ A(y,z), h ∈ A(z,w).
using AssociatorKey = std::array<std::size_t, 7>;
/// (x, y, f) with f ∈ A(x,y).
using UnitorKey = std::array<std::size_t, 3>;

struct RawBicat {
    std::vector<std::string> zero_cells;
    std::vector<RawCategory> homs;   // n*n, index x*n + y
    std::vector<HcompTable> hcomp;   // n^3, index (x*n + y)*n + z; empty tables mean all omitted
    std::vector<std::optional<std::size_t>> units;
    std::map<AssociatorKey, std::size_t> associators;  // omitted entries are identities
    std::map<UnitorKey, std::size_t> left_unitors;     // ℓ_f : 1_y ∘ f -> f
    std::map<UnitorKey, std::size_t> right_unitors;    // r_f : f ∘ 1_x -> f
};

class FinBicat;
FinBicat validate_bicat(const RawBicat& raw);

class FinBicat {
public:
    std::size_t zero_cell_count() const { return zero_cells_.size(); }
    const std::vector<std::string>& zero_cells() const { return zero_cells_; }
    const FinCat& hom(std::size_t x, std::size_t y) const { return homs_[x * zero_cells_.size() + y]; }
    std::size_t unit(std::size_t x) const { return units_[x]; }

    /// g ∘ f for 1-cells f ∈ A(x,y), g ∈ A(y,z).
    std::size_t hcomp1(std::size_t x, std::size_t y, std::size_t z, std::size_t g, std::size_t f) const {
        return table(x, y, z).one_cells[g * hom(x, y).object_count() + f];
    }
    /// β ∘ₕ α for 2-cells α ∈ A(x,y), β ∈ A(y,z).
    std::size_t hcomp2(std::size_t x, std::size_t y, std::size_t z, std::size_t beta, std::size_t alpha) const {
        return table(x, y, z).two_cells[beta * hom(x, y).morphism_count() + alpha];
    }
    std::size_t associator(const AssociatorKey& k) const { return associators_.at(k); }
    std::size_t left_unitor(std::size_t x, std::size_t y, std::size_t f) const { return left_unitors_.at({x, y, f}); }
    std::size_t right_unitor(std::size_t x, std::size_t y, std::size_t f) const {
        return right_unitors_.at({x, y, f});
    }

    /// True when every coherence 2-cell is an identity.
    bool is_strict() const {
        for (const auto& [k, a] : associators_)
            if (!hom(k[0], k[3]).is_identity(a)) return false;
        for (const auto& [k, l] : left_unitors_)
            if (!hom(k[0], k[1]).is_identity(l)) return false;
        for (const auto& [k, r] : right_unitors_)
            if (!hom(k[0], k[1]).is_identity(r)) return false;
        return true;
    }

private:
    friend FinBicat validate_bicat(const RawBicat& raw);
    friend RawBicat to_raw(const FinBicat& b);

    const HcompTable& table(std::size_t x, std::size_t y, std::size_t z) const {
        const std::size_t n = zero_cells_.size();
        return hcomp_[(x * n + y) * n + z];
    }

    std::vector<std::string> zero_cells_;
    std::vector<FinCat> homs_;
    std::vector<HcompTable> hcomp_;
    std::vector<std::size_t> units_;
    std::map<AssociatorKey, std::size_t> associators_;
    std::map<UnitorKey, std::size_t> left_unitors_;
    std::map<UnitorKey, std::size_t> right_unitors_;
};

namespace detail {

inline bool is_invertible(const FinCat& c, std::size_t a) {
    for (std::size_t b : c.hom(c.tgt(a), c.src(a)))
        if (c.comp(b, a) == c.identity(c.src(a)) && c.comp(a, b) == c.identity(c.tgt(a))) return true;
    return false;
}

inline std::string pair_name(const std::vector<std::string>& cells, std::size_t x, std::size_t y) {
    return "(" + cells[x] + "," + cells[y] + ")";
}

struct BicatChecker {
    const RawBicat& raw;
    std::vector<Violation> v;
    std::size_t n = 0;
    std::vector<FinCat> homs;
    std::vector<HcompTable> hcomp;
    std::vector<std::size_t> units;
    std::map<AssociatorKey, std::size_t> associators;
    std::map<UnitorKey, std::size_t> left_unitors, right_unitors;

    explicit BicatChecker(const RawBicat& r) : raw(r) {}

    void add(std::string kind, std::string msg, std::vector<std::size_t> idx = {}) {
        v.push_back({std::move(kind), std::move(msg), std::move(idx)});
    }
    const FinCat& hom(std::size_t x, std::size_t y) const { return homs[x * n + y]; }
    std::string where(std::size_t x, std::size_t y) const { return pair_name(raw.zero_cells, x, y); }
    std::string where(std::size_t x, std::size_t y, std::size_t z) const {
        return "(" + raw.zero_cells[x] + "," + raw.zero_cells[y] + "," + raw.zero_cells[z] + ")";
    }
    std::size_t& one(std::size_t x, std::size_t y, std::size_t z, std::size_t g, std::size_t f) {
        return hcomp[(x * n + y) * n + z].one_cells[g * hom(x, y).object_count() + f];
    }
    std::size_t& two(std::size_t x, std::size_t y, std::size_t z, std::size_t b, std::size_t a) {
        return hcomp[(x * n + y) * n + z].two_cells[b * hom(x, y).morphism_count() + a];
    }

    bool check_homs() {
        n = raw.zero_cells.size();
        if (raw.homs.size() != n * n) {
            add("shape", "expected one hom-category per ordered pair of 0-cells");
            return false;
        }
        bool ok = true;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                auto hv = check_category(raw.homs[x * n + y]);
                for (auto& e : hv) {
                    e.message = "hom" + where(x, y) + ": " + e.message;
                    e.kind = "hom-category/" + e.kind;
                    v.push_back(std::move(e));
                    ok = false;
                }
                if (hv.empty()) homs.push_back(validate_category(raw.homs[x * n + y]));
                else homs.emplace_back();
            }
        return ok;
    }

    bool check_units() {
        bool ok = raw.units.size() == n;
        if (!ok) {
            add("missing-unit", "unit list does not cover every 0-cell");
            return false;
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (!raw.units[x] || *raw.units[x] >= hom(x, x).object_count()) {
                add("missing-unit", "0-cell '" + raw.zero_cells[x] + "' has no valid unit 1-cell", {x});
                ok = false;
            } else {
                units.push_back(*raw.units[x]);
            }
        }
        return ok;
    }

    // Sizes the tables and fills omitted entries that have a strict default:
    // composites with a unit 1-cell, and composites of identity 2-cells.
    bool complete_hcomp() {
        if (!raw.hcomp.empty() && raw.hcomp.size() != n * n * n) {
            add("shape", "expected one horizontal-composition table per triple of 0-cells");
            return false;
        }
        hcomp.assign(n * n * n, {});
        bool ok = true;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    const FinCat& ab = hom(x, y);
                    const FinCat& bc = hom(y, z);
                    const FinCat& ac = hom(x, z);
                    auto& t = hcomp[(x * n + y) * n + z];
                    const std::size_t n1 = bc.object_count() * ab.object_count();
                    const std::size_t n2 = bc.morphism_count() * ab.morphism_count();
                    t.one_cells.assign(n1, npos);
                    t.two_cells.assign(n2, npos);
                    if (!raw.hcomp.empty()) {
                        const auto& src = raw.hcomp[(x * n + y) * n + z];
                        if ((!src.one_cells.empty() && src.one_cells.size() != n1) ||
                            (!src.two_cells.empty() && src.two_cells.size() != n2)) {
                            add("shape", "horizontal composition table for " + where(x, y, z) + " has the wrong size");
                            ok = false;
                            continue;
                        }
                        if (!src.one_cells.empty()) t.one_cells = src.one_cells;
                        if (!src.two_cells.empty()) t.two_cells = src.two_cells;
                    }
                    for (auto c : t.one_cells)
                        if (c != npos && c >= ac.object_count()) {
                            add("index-out-of-range", "1-cell composite out of range in " + where(x, y, z));
                            ok = false;
                        }
                    for (auto c : t.two_cells)
                        if (c != npos && c >= ac.morphism_count()) {
                            add("index-out-of-range", "2-cell composite out of range in " + where(x, y, z));
                            ok = false;
                        }
                }
        if (!ok) return false;

        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const std::size_t m = hom(x, y).object_count();
                for (std::size_t f = 0; f < m; ++f) {
                    if (x == y && f == units[x]) continue;
                    auto& right = one(x, x, y, f, units[x]);
                    if (right == npos && !raw.right_unitors.count({x, y, f})) right = f;
                    auto& left = one(x, y, y, units[y], f);
                    if (left == npos && !raw.left_unitors.count({x, y, f})) left = f;
                }
                if (x == y) {
                    auto& uu = one(x, x, x, units[x], units[x]);
                    if (uu == npos) uu = units[x];
                }
            }

        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    const FinCat& ab = hom(x, y);
                    const FinCat& bc = hom(y, z);
                    const FinCat& ac = hom(x, z);
                    for (std::size_t g = 0; g < bc.object_count(); ++g)
                        for (std::size_t f = 0; f < ab.object_count(); ++f) {
                            const std::size_t gf = one(x, y, z, g, f);
                            if (gf == npos) {
                                add("missing-hcomp", "no 1-cell composite for (" + bc.object(g) + ", " + ab.object(f) +
                                                         ") in " + where(x, y, z),
                                    {x, y, z, g, f});
                                ok = false;
                                continue;
                            }
                            auto& idid = two(x, y, z, bc.identity(g), ab.identity(f));
                            if (idid == npos) idid = ac.identity(gf);
                        }
                    for (std::size_t b = 0; b < bc.morphism_count(); ++b)
                        for (std::size_t a = 0; a < ab.morphism_count(); ++a)
                            if (two(x, y, z, b, a) == npos) {
                                add("missing-hcomp", "no 2-cell composite for (" + bc.morphism(b).name + ", " +
                                                         ab.morphism(a).name + ") in " + where(x, y, z),
                                    {x, y, z, b, a});
                                ok = false;
                            }
                }
        return ok;
    }

    void check_functoriality() {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    const FinCat& ab = hom(x, y);
                    const FinCat& bc = hom(y, z);
                    const FinCat& ac = hom(x, z);
                    bool endpoints_ok = true;
                    for (std::size_t b = 0; b < bc.morphism_count(); ++b)
                        for (std::size_t a = 0; a < ab.morphism_count(); ++a) {
                            const std::size_t c = two(x, y, z, b, a);
                            const std::size_t s = one(x, y, z, bc.src(b), ab.src(a));
                            const std::size_t t = one(x, y, z, bc.tgt(b), ab.tgt(a));
                            if (ac.src(c) != s || ac.tgt(c) != t) {
                                add("hcomp-endpoints", "2-cell composite (" + bc.morphism(b).name + ", " +
                                                           ab.morphism(a).name + ") in " + where(x, y, z) +
                                                           " has wrong endpoints",
                                    {x, y, z, b, a});
                                endpoints_ok = false;
                            }
                        }
                    for (std::size_t g = 0; g < bc.object_count(); ++g)
                        for (std::size_t f = 0; f < ab.object_count(); ++f) {
                            const std::size_t gf = one(x, y, z, g, f);
                            if (two(x, y, z, bc.identity(g), ab.identity(f)) != ac.identity(gf))
                                add("functoriality", "identity 2-cells of (" + bc.object(g) + ", " + ab.object(f) +
                                                         ") do not compose to an identity in " + where(x, y, z),
                                    {x, y, z, g, f});
                        }
                    if (!endpoints_ok) continue;
                    // Interchange: (β' ∘ β) ∘ₕ (α' ∘ α) = (β' ∘ₕ α') ∘ (β ∘ₕ α).
                    for (std::size_t b = 0; b < bc.morphism_count(); ++b)
                        for (std::size_t b2 : bc.outgoing(bc.tgt(b)))
                            for (std::size_t a = 0; a < ab.morphism_count(); ++a)
                                for (std::size_t a2 : ab.outgoing(ab.tgt(a))) {
                                    const std::size_t lhs = two(x, y, z, bc.comp(b2, b), ab.comp(a2, a));
                                    const std::size_t rhs = ac.comp(two(x, y, z, b2, a2), two(x, y, z, b, a));
                                    if (lhs != rhs)
                                        add("functoriality", "horizontal composition in " + where(x, y, z) +
                                                                 " does not preserve vertical composition at (" +
                                                                 bc.morphism(b2).name + "." + bc.morphism(b).name +
                                                                 ", " + ab.morphism(a2).name + "." +
                                                                 ab.morphism(a).name + ")",
                                            {x, y, z, b2, b, a2, a});
                                }
                }
    }

    void check_coherence_cell(const FinCat& c, std::size_t given, bool explicit_cell, std::size_t src,
                              std::size_t tgt, const std::string& what, std::vector<std::size_t> idx) {
        if (!explicit_cell) {
            if (src != tgt)
                add("coherence-endpoints", what + " omitted but its endpoints differ, so it cannot be an identity", idx);
            return;
        }
        if (given >= c.morphism_count()) {
            add("index-out-of-range", what + " out of range", idx);
            return;
        }
        if (c.src(given) != src || c.tgt(given) != tgt) add("coherence-endpoints", what + " has wrong endpoints", idx);
        else if (!is_invertible(c, given)) add("coherence-not-invertible", what + " is not invertible", idx);
    }

    void check_coherence() {
        for (const auto& [k, cell] : raw.associators) {
            for (auto i : std::span(k).first(4))
                if (i >= n) {
                    add("index-out-of-range", "associator refers to an unknown 0-cell");
                    return;
                }
        }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    for (std::size_t w = 0; w < n; ++w) {
                        const FinCat& xy = hom(x, y);
                        const FinCat& yz = hom(y, z);
                        const FinCat& zw = hom(z, w);
                        const FinCat& xw = hom(x, w);
                        for (std::size_t h = 0; h < zw.object_count(); ++h)
                            for (std::size_t g = 0; g < yz.object_count(); ++g)
                                for (std::size_t f = 0; f < xy.object_count(); ++f) {
                                    const std::size_t hg_f = one(x, y, w, one(y, z, w, h, g), f);
                                    const std::size_t h_gf = one(x, z, w, h, one(x, y, z, g, f));
                                    const AssociatorKey key{x, y, z, w, h, g, f};
                                    auto it = raw.associators.find(key);
                                    const bool given = it != raw.associators.end();
                                    const std::size_t cell = given ? it->second : xw.identity(hg_f);
                                    check_coherence_cell(xw, cell, given, hg_f, h_gf,
                                                         "associator of (" + zw.object(h) + ", " + yz.object(g) +
                                                             ", " + xy.object(f) + ")",
                                                         {x, y, z, w, h, g, f});
                                    associators[key] = cell;
                                }
                    }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const FinCat& xy = hom(x, y);
                for (std::size_t f = 0; f < xy.object_count(); ++f) {
                    const std::size_t lsrc = one(x, y, y, units[y], f);
                    auto lit = raw.left_unitors.find({x, y, f});
                    const bool lgiven = lit != raw.left_unitors.end();
                    const std::size_t lcell = lgiven ? lit->second : xy.identity(f);
                    check_coherence_cell(xy, lcell, lgiven, lsrc, f, "left unitor of " + xy.object(f), {x, y, f});
                    left_unitors[{x, y, f}] = lcell;

                    const std::size_t rsrc = one(x, x, y, f, units[x]);
                    auto rit = raw.right_unitors.find({x, y, f});
                    const bool rgiven = rit != raw.right_unitors.end();
                    const std::size_t rcell = rgiven ? rit->second : xy.identity(f);
                    check_coherence_cell(xy, rcell, rgiven, rsrc, f, "right unitor of " + xy.object(f), {x, y, f});
                    right_unitors[{x, y, f}] = rcell;
                }
            }
    }

    void run() {
        if (!check_homs()) return;
        if (!check_units()) return;
        if (!complete_hcomp()) return;
        check_functoriality();
        check_coherence();
    }
};

}  // namespace detail

/// Every violation of the bicategory invariants; pentagon and triangle
/// coherence diagrams are not checked.
inline std::vector<Violation> check_bicat(const RawBicat& raw) {
    detail::BicatChecker c{raw};
    c.run();
    return std::move(c.v);
}

inline FinBicat validate_bicat(const RawBicat& raw) {
    detail::BicatChecker c{raw};
    c.run();
    if (!c.v.empty()) throw ValidationError("invalid bicategory: " + summarize(c.v), std::move(c.v));
    FinBicat b;
    b.zero_cells_ = raw.zero_cells;
    b.homs_ = std::move(c.homs);
    b.hcomp_ = std::move(c.hcomp);
    b.units_ = std::move(c.units);
    b.associators_ = std::move(c.associators);
    b.left_unitors_ = std::move(c.left_unitors);
    b.right_unitors_ = std::move(c.right_unitors);
    return b;
}

/// Raw data reproducing B, with every table entry and coherence cell explicit.
inline RawBicat to_raw(const FinBicat& b) {
    RawBicat raw;
    raw.zero_cells = b.zero_cells_;
    for (const auto& h : b.homs_) raw.homs.push_back(to_raw(h));
    raw.hcomp = b.hcomp_;
    for (auto u : b.units_) raw.units.emplace_back(u);
    raw.associators = b.associators_;
    raw.left_unitors = b.left_unitors_;
    raw.right_unitors = b.right_unitors_;
    return raw;
}

/// C as a strict bicategory with discrete hom-categories.
inline FinBicat cat_as_bicat(const FinCat& c) {
    const std::size_t n = c.object_count();
    RawBicat raw;
    raw.zero_cells = c.objects();
    // local[f] = position of f inside its Hom-set
    std::vector<std::size_t> local(c.morphism_count());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < c.hom(x, y).size(); ++i) {
                local[c.hom(x, y)[i]] = i;
                names.push_back(c.morphism(c.hom(x, y)[i]).name);
            }
            raw.homs.push_back(to_raw(discrete_category(std::move(names))));
        }
    raw.hcomp.resize(n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                auto& t = raw.hcomp[(x * n + y) * n + z];
                const auto& xy = c.hom(x, y);
                const auto& yz = c.hom(y, z);
                for (std::size_t g : yz)
                    for (std::size_t f : xy) t.one_cells.push_back(local[c.comp(g, f)]);
                // Discrete homs: the only 2-cells are identities, indexed like their 1-cells.
                t.two_cells = t.one_cells;
            }
    for (std::size_t x = 0; x < n; ++x) raw.units.emplace_back(local[c.identity(x)]);
    return validate_bicat(raw);
}

/// χ of each hom-category; throws UndefinedEuler when one has none.
inline QMatrix bicat_adjacency(const FinBicat& b) {
    const std::size_t n = b.zero_cell_count();
    QMatrix m(n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto r = euler_char(b.hom(x, y));
            if (!r.exists) throw UndefinedEuler({{b.zero_cells()[x], b.zero_cells()[y]}}, r.reason);
            m(x, y) = *r.value;
        }
    return m;
}

inline EulerResult bicat_euler_char(const FinBicat& b) { return euler_from_matrix(bicat_adjacency(b)); }

struct InternalEquivalenceWitness {
    std::size_t f = 0;      // 1-cell x -> y
    std::size_t g = 0;      // 1-cell y -> x
    std::size_t alpha = 0;  // invertible 2-cell g∘f => 1_x in A(x,x)
    std::size_t beta = 0;   // invertible 2-cell f∘g => 1_y in A(y,y)
};

/// Exhaustive search over 1-cell pairs (f, g) for an internal equivalence.
inline std::optional<InternalEquivalenceWitness> internal_equivalence(const FinBicat& b, std::size_t x,
                                                                     std::size_t y, SearchBudget& budget) {
    const FinCat& xy = b.hom(x, y);
    const FinCat& yx = b.hom(y, x);
    const FinCat& xx = b.hom(x, x);
    const FinCat& yy = b.hom(y, y);
    for (std::size_t f = 0; f < xy.object_count(); ++f)
        for (std::size_t g = 0; g < yx.object_count(); ++g) {
            budget.spend();
            auto a = find_isomorphism(xx, b.hcomp1(x, y, x, g, f), b.unit(x));
            if (!a) continue;
            auto c = find_isomorphism(yy, b.hcomp1(y, x, y, f, g), b.unit(y));
            if (!c) continue;
            return InternalEquivalenceWitness{f, g, a->first, c->first};
        }
    return std::nullopt;
}

struct InternalEquivPartition {
    std::vector<std::size_t> class_of;
    std::vector<std::size_t> representatives;
};

inline InternalEquivPartition internal_equiv_classes(const FinBicat& b, SearchBudget& budget) {
    InternalEquivPartition p;
    p.class_of.assign(b.zero_cell_count(), npos);
    for (std::size_t x = 0; x < b.zero_cell_count(); ++x) {
        for (std::size_t cls = 0; cls < p.representatives.size(); ++cls)
            if (internal_equivalence(b, p.representatives[cls], x, budget)) {
                p.class_of[x] = cls;
                break;
            }
        if (p.class_of[x] == npos) {
            p.class_of[x] = p.representatives.size();
            p.representatives.push_back(x);
        }
    }
    return p;
}

inline InternalEquivPartition internal_equiv_classes(const FinBicat& b) {
    SearchBudget budget;
    return internal_equiv_classes(b, budget);
}

/// A weighting of the bicategory adjacency matrix that is constant on
/// internal equivalence classes, or nullopt when there is no weighting.
inline std::optional<Weighting> bicat_constant_weighting(const FinBicat& b, Side side = Side::weighting) {
    auto w = weighting_of_matrix(bicat_adjacency(b), side);
    if (!w) return std::nullopt;
    w->values = average_over_classes(w->values, internal_equiv_classes(b).class_of);
    return w;
}

// ---------------------------------------------------------------------------
// Recursive hom data

/// Level 0: a finite set of `size` elements. Level n >= 1: cells plus, for
/// every ordered pair, a level n-1 datum stored at hom[i * cells + j].
struct EulerDatum {
    std::size_t level = 0;
    std::size_t size = 0;
    std::vector<std::string> cells;
    std::vector<EulerDatum> hom;

    static EulerDatum set(std::size_t size) { return {0, size, {}, {}}; }

    const EulerDatum& at(std::size_t i, std::size_t j) const { return hom[i * cells.size() + j]; }
};

/// Checks totality and level consistency; throws std::invalid_argument.
inline void check_datum(const EulerDatum& d, const std::string& where = "top") {
    if (d.level == 0) {
        if (!d.cells.empty() || !d.hom.empty())
            throw std::invalid_argument("level-0 datum at " + where + " must not have cells");
        return;
    }
    if (d.hom.size() != d.cells.size() * d.cells.size())
        throw std::invalid_argument("datum at " + where + " is missing hom data for some pair of cells");
    for (std::size_t i = 0; i < d.cells.size(); ++i)
        for (std::size_t j = 0; j < d.cells.size(); ++j) {
            const auto& h = d.at(i, j);
            const std::string here = where + "/(" + d.cells[i] + "," + d.cells[j] + ")";
            if (h.level + 1 != d.level)
                throw std::invalid_argument("datum at " + here + " has level " + std::to_string(h.level) +
                                            ", expected " + std::to_string(d.level - 1));
            check_datum(h, here);
        }
}

inline EulerDatum category_to_datum(const FinCat& c) {
    EulerDatum d{1, 0, c.objects(), {}};
    for (std::size_t x = 0; x < c.object_count(); ++x)
        for (std::size_t y = 0; y < c.object_count(); ++y) d.hom.push_back(EulerDatum::set(c.hom_count(x, y)));
    return d;
}

/// Forgets composition: 0-cells, then 1-cells of each hom with 2-cell counts.
inline EulerDatum bicat_to_datum(const FinBicat& b) {
    EulerDatum d{2, 0, b.zero_cells(), {}};
    for (std::size_t x = 0; x < b.zero_cell_count(); ++x)
        for (std::size_t y = 0; y < b.zero_cell_count(); ++y) d.hom.push_back(category_to_datum(b.hom(x, y)));
    return d;
}

namespace detail {

inline Rational chi_of_hom(const EulerDatum& d, std::vector<std::pair<std::string, std::string>>& path);

inline EulerResult chi_n_at(const EulerDatum& d, std::vector<std::pair<std::string, std::string>>& path) {
    if (d.level == 0) {
        EulerResult r;
        r.exists = true;
        r.value = Rational(static_cast<std::int64_t>(d.size));
        return r;
    }
    const std::size_t n = d.cells.size();
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            path.emplace_back(d.cells[i], d.cells[j]);
            m(i, j) = chi_of_hom(d.at(i, j), path);
            path.pop_back();
        }
    return euler_from_matrix(m);
}

inline Rational chi_of_hom(const EulerDatum& d, std::vector<std::pair<std::string, std::string>>& path) {
    auto r = chi_n_at(d, path);
    if (!r.exists) throw UndefinedEuler(path, r.reason);
    return *r.value;
}

}  // namespace detail

/// χ at any level. A missing top-level weighting is reported in the result;
/// a hom somewhere below without χ raises UndefinedEuler with its path.
inline EulerResult chi_n(const EulerDatum& d) {
    check_datum(d);
    std::vector<std::pair<std::string, std::string>> path;
    return detail::chi_n_at(d, path);
}

}  // namespace eulerkit
