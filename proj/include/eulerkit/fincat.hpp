#pragma once

// Finite categories as explicit composition tables.
//
// A FinCat can only be obtained from validate_category (untrusted input) or
// from the constructions in this header, so every instance satisfies the
// category axioms: total composition on composable pairs, associativity and
// the identity laws.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace eulerkit {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Morphism {
    std::string name;
    std::size_t src = 0;
    std::size_t tgt = 0;

    friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// One entry of a composition table: then ∘ first = equals.
struct Composite {
    std::size_t first = 0;
    std::size_t then = 0;
    std::size_t equals = 0;
};

/// Unvalidated category data, indices refer into `objects` / `morphisms`.
struct RawCategory {
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<std::optional<std::size_t>> identities;  // per object
    std::vector<Composite> composition;
};

struct Violation {
    std::string kind;
    std::string message;
    std::vector<std::size_t> indices;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, std::vector<Violation> violations)
        : std::runtime_error(what), violations_(std::move(violations)) {}
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Thrown when a combinatorial search runs out of its node allowance.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted() : std::runtime_error("search budget exhausted") {}
};

class SearchBudget {
public:
    static constexpr std::uint64_t kDefault = 10'000'000;

    explicit SearchBudget(std::uint64_t nodes = kDefault) : remaining_(nodes) {}
    void spend(std::uint64_t n = 1) {
        if (n > remaining_) throw BudgetExhausted();
        remaining_ -= n;
    }
    std::uint64_t remaining() const { return remaining_; }

private:
    std::uint64_t remaining_;
};

namespace detail {
struct CatAssembler;
}

class FinCat {
public:
    FinCat() = default;

    std::size_t object_count() const { return objects_.size(); }
    std::size_t morphism_count() const { return morphisms_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<Morphism>& morphisms() const { return morphisms_; }
    const std::string& object(std::size_t x) const { return objects_[x]; }
    const Morphism& morphism(std::size_t f) const { return morphisms_[f]; }
    std::size_t src(std::size_t f) const { return morphisms_[f].src; }
    std::size_t tgt(std::size_t f) const { return morphisms_[f].tgt; }
    std::size_t identity(std::size_t x) const { return identity_[x]; }
    bool is_identity(std::size_t f) const { return identity_[src(f)] == f; }

    /// g ∘ f, or nullopt when tgt(f) != src(g).
    std::optional<std::size_t> compose(std::size_t g, std::size_t f) const {
        auto h = table_[g * morphisms_.size() + f];
        if (h == npos) return std::nullopt;
        return h;
    }
    /// g ∘ f for a pair known to be composable.
    std::size_t comp(std::size_t g, std::size_t f) const { return table_[g * morphisms_.size() + f]; }

    const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const {
        return hom_[x * objects_.size() + y];
    }
    std::size_t hom_count(std::size_t x, std::size_t y) const { return hom(x, y).size(); }
    const std::vector<std::size_t>& outgoing(std::size_t x) const { return out_[x]; }
    const std::vector<std::size_t>& incoming(std::size_t x) const { return in_[x]; }

    std::optional<std::size_t> find_object(const std::string& name) const {
        auto it = std::find(objects_.begin(), objects_.end(), name);
        if (it == objects_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - objects_.begin());
    }
    std::optional<std::size_t> find_morphism(const std::string& name) const {
        for (std::size_t f = 0; f < morphisms_.size(); ++f)
            if (morphisms_[f].name == name) return f;
        return std::nullopt;
    }

    /// Structural equality: same names, endpoints, identities and table.
    friend bool operator==(const FinCat& a, const FinCat& b) {
        return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ &&
               a.identity_ == b.identity_ && a.table_ == b.table_;
    }

private:
    friend struct detail::CatAssembler;

    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<std::size_t> identity_;
    std::vector<std::size_t> table_;  // m*m, row g, column f; npos where undefined
    std::vector<std::vector<std::size_t>> hom_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

namespace detail {

struct CatAssembler {
    static FinCat assemble(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                           std::vector<std::size_t> identity, std::vector<std::size_t> table) {
        FinCat c;
        const std::size_t n = objects.size();
        c.objects_ = std::move(objects);
        c.morphisms_ = std::move(morphisms);
        c.identity_ = std::move(identity);
        c.table_ = std::move(table);
        c.hom_.assign(n * n, {});
        c.out_.assign(n, {});
        c.in_.assign(n, {});
        for (std::size_t f = 0; f < c.morphisms_.size(); ++f) {
            const auto& m = c.morphisms_[f];
            c.hom_[m.src * n + m.tgt].push_back(f);
            c.out_[m.src].push_back(f);
            c.in_[m.tgt].push_back(f);
        }
        return c;
    }

    /// Builds the table by calling `op(g, f)` on every composable pair.
    template <class Compose>
    static FinCat build(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                        std::vector<std::size_t> identity, Compose op) {
        const std::size_t m = morphisms.size();
        std::vector<std::vector<std::size_t>> out(objects.size());
        for (std::size_t g = 0; g < m; ++g) out[morphisms[g].src].push_back(g);
        std::vector<std::size_t> table(m * m, npos);
        for (std::size_t f = 0; f < m; ++f)
            for (std::size_t g : out[morphisms[f].tgt]) table[g * m + f] = op(g, f);
        return assemble(std::move(objects), std::move(morphisms), std::move(identity), std::move(table));
    }
};

/// Makes `name` distinct from everything in `taken` by appending primes.
inline std::string fresh_name(std::string name, const std::set<std::string>& taken) {
    while (taken.count(name)) name += '\'';
    return name;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Validation

/// Every axiom violation of `raw`; empty iff the data is a category.
///
/// Composites with an identity as one factor may be omitted and are inferred.
/// All other composable pairs must appear in `raw.composition`.
inline std::vector<Violation> check_category(const RawCategory& raw) {
    std::vector<Violation> v;
    const std::size_t n = raw.objects.size();
    const std::size_t m = raw.morphisms.size();

    auto add = [&v](std::string kind, std::string msg, std::vector<std::size_t> idx) {
        v.push_back({std::move(kind), std::move(msg), std::move(idx)});
    };

    {
        std::set<std::string> seen;
        for (std::size_t x = 0; x < n; ++x)
            if (!seen.insert(raw.objects[x]).second)
                add("duplicate-name", "duplicate object name '" + raw.objects[x] + "'", {x});
        seen.clear();
        for (std::size_t f = 0; f < m; ++f)
            if (!seen.insert(raw.morphisms[f].name).second)
                add("duplicate-name", "duplicate morphism name '" + raw.morphisms[f].name + "'", {f});
    }
    for (std::size_t f = 0; f < m; ++f)
        if (raw.morphisms[f].src >= n || raw.morphisms[f].tgt >= n)
            add("index-out-of-range", "morphism '" + raw.morphisms[f].name + "' has an endpoint out of range", {f});
    for (const auto& c : raw.composition)
        if (c.first >= m || c.then >= m || c.equals >= m)
            add("index-out-of-range", "composition entry refers to a morphism out of range",
                {c.first, c.then, c.equals});
    if (raw.identities.size() != n)
        add("missing-identity", "identity list does not cover every object", {});
    if (!v.empty()) return v;

    const auto& mor = raw.morphisms;
    auto mname = [&](std::size_t f) { return "'" + mor[f].name + "'"; };

    std::vector<std::size_t> ident(n, npos);
    bool identities_ok = true;
    for (std::size_t x = 0; x < n; ++x) {
        const auto& id = raw.identities[x];
        if (!id) {
            add("missing-identity", "object '" + raw.objects[x] + "' has no identity", {x});
            identities_ok = false;
        } else if (*id >= m) {
            add("index-out-of-range", "identity of '" + raw.objects[x] + "' out of range", {x});
            identities_ok = false;
        } else if (mor[*id].src != x || mor[*id].tgt != x) {
            add("identity-endpoints", "identity " + mname(*id) + " of '" + raw.objects[x] + "' is not an endomorphism of it",
                {x, *id});
            identities_ok = false;
        } else {
            ident[x] = *id;
        }
    }
    for (std::size_t x = 0; x < n && identities_ok; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (ident[x] == ident[y]) {
                add("identity-endpoints", "objects share an identity morphism", {x, y});
                identities_ok = false;
            }

    std::vector<std::size_t> table(m * m, npos);
    bool endpoints_ok = true;
    for (const auto& c : raw.composition) {
        const std::size_t g = c.then, f = c.first, h = c.equals;
        if (mor[f].tgt != mor[g].src) {
            add("composite-endpoints", "composite " + mname(g) + " after " + mname(f) + " listed for a non-composable pair",
                {g, f});
            endpoints_ok = false;
            continue;
        }
        if (mor[h].src != mor[f].src || mor[h].tgt != mor[g].tgt) {
            add("composite-endpoints", "composite " + mname(g) + " after " + mname(f) + " = " + mname(h) +
                                           " has wrong endpoints",
                {g, f, h});
            endpoints_ok = false;
        }
        auto& slot = table[g * m + f];
        if (slot != npos && slot != h) {
            add("conflicting-composite", "composite " + mname(g) + " after " + mname(f) + " listed twice with different values",
                {g, f});
            endpoints_ok = false;
        }
        slot = h;
    }
    if (!identities_ok) return v;

    // Infer identity composites that were not given explicitly.
    for (std::size_t f = 0; f < m; ++f) {
        auto& right = table[f * m + ident[mor[f].src]];
        if (right == npos) right = f;
        auto& left = table[ident[mor[f].tgt] * m + f];
        if (left == npos) left = f;
    }

    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t g = 0; g < m; ++g) out[mor[g].src].push_back(g);

    for (std::size_t f = 0; f < m; ++f)
        for (std::size_t g : out[mor[f].tgt])
            if (table[g * m + f] == npos) {
                add("missing-composite", "no composite given for " + mname(g) + " after " + mname(f), {g, f});
                endpoints_ok = false;
            }

    for (std::size_t f = 0; f < m; ++f) {
        if (table[f * m + ident[mor[f].src]] != f)
            add("identity-law", mname(f) + " after identity of its source is not " + mname(f), {f});
        if (table[ident[mor[f].tgt] * m + f] != f)
            add("identity-law", "identity of target after " + mname(f) + " is not " + mname(f), {f});
    }
    if (!endpoints_ok) return v;

    for (std::size_t f = 0; f < m; ++f)
        for (std::size_t g : out[mor[f].tgt]) {
            const std::size_t gf = table[g * m + f];
            for (std::size_t h : out[mor[g].tgt]) {
                const std::size_t hg = table[h * m + g];
                if (table[h * m + gf] != table[hg * m + f])
                    add("associativity", "associativity fails at (" + mor[h].name + ", " + mor[g].name + ", " + mor[f].name + ")",
                        {h, g, f});
            }
        }
    return v;
}

inline std::string summarize(const std::vector<Violation>& v) {
    std::string s = std::to_string(v.size()) + " violation(s)";
    if (!v.empty()) s += ": " + v.front().message;
    return s;
}

/// Checked construction; throws ValidationError listing every violation.
inline FinCat validate_category(const RawCategory& raw) {
    auto violations = check_category(raw);
    if (!violations.empty()) throw ValidationError("invalid category: " + summarize(violations), std::move(violations));

    const std::size_t n = raw.objects.size();
    const std::size_t m = raw.morphisms.size();
    std::vector<std::size_t> ident(n);
    for (std::size_t x = 0; x < n; ++x) ident[x] = *raw.identities[x];
    std::vector<std::size_t> table(m * m, npos);
    for (const auto& c : raw.composition) table[c.then * m + c.first] = c.equals;
    for (std::size_t f = 0; f < m; ++f) {
        table[f * m + ident[raw.morphisms[f].src]] = f;
        table[ident[raw.morphisms[f].tgt] * m + f] = f;
    }
    return detail::CatAssembler::assemble(raw.objects, raw.morphisms, std::move(ident), std::move(table));
}

/// Raw data for C, listing every composite that does not involve an identity.
inline RawCategory to_raw(const FinCat& c) {
    RawCategory raw;
    raw.objects = c.objects();
    raw.morphisms = c.morphisms();
    for (std::size_t x = 0; x < c.object_count(); ++x) raw.identities.push_back(c.identity(x));
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        if (c.is_identity(f)) continue;
        for (std::size_t g : c.outgoing(c.tgt(f))) {
            if (c.is_identity(g)) continue;
            raw.composition.push_back({f, g, c.comp(g, f)});
        }
    }
    return raw;
}

// ---------------------------------------------------------------------------
// Basic categories

inline FinCat empty_category() { return {}; }

/// Discrete category on the given object names.
inline FinCat discrete_category(std::vector<std::string> names) {
    std::vector<Morphism> mor;
    std::vector<std::size_t> ident;
    for (std::size_t x = 0; x < names.size(); ++x) {
        mor.push_back({"1_" + names[x], x, x});
        ident.push_back(x);
    }
    return detail::CatAssembler::build(std::move(names), std::move(mor), std::move(ident),
                                       [](std::size_t g, std::size_t) { return g; });
}

/// Discrete category on objects "0".."n-1".
inline FinCat discrete_category(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return discrete_category(std::move(names));
}

/// One-object category of a monoid given by its multiplication table;
/// table[a][b] = a·b, read as "a after b". Element `unit` is the identity.
inline FinCat monoid_category(const std::vector<std::vector<std::size_t>>& table, std::size_t unit = 0,
                              std::vector<std::string> names = {}) {
    const std::size_t m = table.size();
    if (names.empty())
        for (std::size_t a = 0; a < m; ++a) names.push_back(a == unit ? "e" : "m" + std::to_string(a));
    std::vector<Morphism> mor;
    for (std::size_t a = 0; a < m; ++a) mor.push_back({names[a], 0, 0});
    RawCategory raw{{"*"}, std::move(mor), {unit}, {}};
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) raw.composition.push_back({b, a, table[a][b]});
    return validate_category(raw);
}

// ---------------------------------------------------------------------------
// Constructions

inline FinCat opposite(const FinCat& c) {
    std::vector<Morphism> mor;
    for (const auto& f : c.morphisms()) mor.push_back({f.name, f.tgt, f.src});
    std::vector<std::size_t> ident;
    for (std::size_t x = 0; x < c.object_count(); ++x) ident.push_back(c.identity(x));
    return detail::CatAssembler::build(c.objects(), std::move(mor), std::move(ident),
                                       [&c](std::size_t g, std::size_t f) { return c.comp(f, g); });
}

/// Objects and morphisms are pairs in lexicographic order: (a, b) sits at
/// index a * |D| + b, which matches the Kronecker product of adjacencies.
inline FinCat product(const FinCat& c, const FinCat& d) {
    const std::size_t nd = d.object_count();
    const std::size_t md = d.morphism_count();
    std::vector<std::string> objects;
    for (const auto& a : c.objects())
        for (const auto& b : d.objects()) objects.push_back("(" + a + "," + b + ")");
    std::vector<Morphism> mor;
    for (const auto& f : c.morphisms())
        for (const auto& g : d.morphisms())
            mor.push_back({"(" + f.name + "," + g.name + ")", f.src * nd + g.src, f.tgt * nd + g.tgt});
    std::vector<std::size_t> ident;
    for (std::size_t a = 0; a < c.object_count(); ++a)
        for (std::size_t b = 0; b < nd; ++b) ident.push_back(c.identity(a) * md + d.identity(b));
    return detail::CatAssembler::build(std::move(objects), std::move(mor), std::move(ident),
                                       [&](std::size_t g, std::size_t f) {
                                           return c.comp(g / md, f / md) * md + d.comp(g % md, f % md);
                                       });
}

/// Disjoint union. Names from D that clash with names in C get primes appended.
inline FinCat coproduct(const FinCat& c, const FinCat& d) {
    const std::size_t nc = c.object_count();
    const std::size_t mc = c.morphism_count();
    std::set<std::string> taken_obj(c.objects().begin(), c.objects().end());
    std::set<std::string> taken_mor;
    for (const auto& f : c.morphisms()) taken_mor.insert(f.name);

    std::vector<std::string> objects = c.objects();
    for (const auto& b : d.objects()) {
        objects.push_back(detail::fresh_name(b, taken_obj));
        taken_obj.insert(objects.back());
    }
    std::vector<Morphism> mor = c.morphisms();
    for (const auto& g : d.morphisms()) {
        mor.push_back({detail::fresh_name(g.name, taken_mor), g.src + nc, g.tgt + nc});
        taken_mor.insert(mor.back().name);
    }
    std::vector<std::size_t> ident;
    for (std::size_t a = 0; a < nc; ++a) ident.push_back(c.identity(a));
    for (std::size_t b = 0; b < d.object_count(); ++b) ident.push_back(d.identity(b) + mc);
    return detail::CatAssembler::build(std::move(objects), std::move(mor), std::move(ident),
                                       [&](std::size_t g, std::size_t f) {
                                           return g < mc ? c.comp(g, f) : d.comp(g - mc, f - mc) + mc;
                                       });
}

struct Subcategory {
    FinCat category;
    std::vector<std::size_t> object_embedding;    // sub object -> ambient object
    std::vector<std::size_t> morphism_embedding;  // sub morphism -> ambient morphism
};

/// Full subcategory on `objects`, kept in the order given.
inline Subcategory full_subcategory(const FinCat& c, const std::vector<std::size_t>& objects) {
    std::vector<std::size_t> local(c.object_count(), npos);
    for (std::size_t i = 0; i < objects.size(); ++i) local[objects[i]] = i;

    Subcategory s;
    s.object_embedding = objects;
    std::vector<std::size_t> local_mor(c.morphism_count(), npos);
    std::vector<Morphism> mor;
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        if (local[c.src(f)] == npos || local[c.tgt(f)] == npos) continue;
        local_mor[f] = mor.size();
        mor.push_back({c.morphism(f).name, local[c.src(f)], local[c.tgt(f)]});
        s.morphism_embedding.push_back(f);
    }
    std::vector<std::string> names;
    std::vector<std::size_t> ident;
    for (auto x : objects) {
        names.push_back(c.object(x));
        ident.push_back(local_mor[c.identity(x)]);
    }
    const auto& emb = s.morphism_embedding;
    s.category = detail::CatAssembler::build(std::move(names), std::move(mor), std::move(ident),
                                             [&](std::size_t g, std::size_t f) {
                                                 return local_mor[c.comp(emb[g], emb[f])];
                                             });
    return s;
}

// ---------------------------------------------------------------------------
// Isomorphism classes, skeleton, terminal/initial

/// A pair (f: x -> y, g: y -> x) of mutually inverse morphisms, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_isomorphism(const FinCat& c, std::size_t x,
                                                                           std::size_t y) {
    for (std::size_t f : c.hom(x, y))
        for (std::size_t g : c.hom(y, x))
            if (c.comp(g, f) == c.identity(x) && c.comp(f, g) == c.identity(y)) return std::pair{f, g};
    return std::nullopt;
}

struct IsoPartition {
    std::vector<std::size_t> class_of;         // object -> class id
    std::vector<std::size_t> representatives;  // class id -> least object index

    std::size_t class_count() const { return representatives.size(); }
    std::vector<std::size_t> members(std::size_t cls) const {
        std::vector<std::size_t> out;
        for (std::size_t x = 0; x < class_of.size(); ++x)
            if (class_of[x] == cls) out.push_back(x);
        return out;
    }
    std::size_t class_size(std::size_t cls) const {
        return static_cast<std::size_t>(std::count(class_of.begin(), class_of.end(), cls));
    }
};

/// Class ids are numbered in order of their least member.
inline IsoPartition iso_classes(const FinCat& c) {
    IsoPartition p;
    p.class_of.assign(c.object_count(), npos);
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        for (std::size_t cls = 0; cls < p.representatives.size(); ++cls)
            if (find_isomorphism(c, p.representatives[cls], x)) {
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

/// Full subcategory on the least-index member of each isomorphism class.
inline Subcategory skeleton_with_embedding(const FinCat& c) {
    return full_subcategory(c, iso_classes(c).representatives);
}

inline FinCat skeleton(const FinCat& c) { return skeleton_with_embedding(c).category; }

inline bool is_terminal(const FinCat& c, std::size_t x) {
    for (std::size_t w = 0; w < c.object_count(); ++w)
        if (c.hom_count(w, x) != 1) return false;
    return true;
}

inline bool is_initial(const FinCat& c, std::size_t x) {
    for (std::size_t w = 0; w < c.object_count(); ++w)
        if (c.hom_count(x, w) != 1) return false;
    return true;
}

inline bool has_terminal_or_initial(const FinCat& c) {
    for (std::size_t x = 0; x < c.object_count(); ++x)
        if (is_terminal(c, x) || is_initial(c, x)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Functors

struct Functor {
    std::vector<std::size_t> object_map;
    std::vector<std::size_t> morphism_map;

    friend bool operator==(const Functor&, const Functor&) = default;
};

inline bool is_functor(const Functor& f, const FinCat& c, const FinCat& d) {
    if (f.object_map.size() != c.object_count() || f.morphism_map.size() != c.morphism_count()) return false;
    for (auto y : f.object_map)
        if (y >= d.object_count()) return false;
    for (auto g : f.morphism_map)
        if (g >= d.morphism_count()) return false;
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
        const std::size_t fm = f.morphism_map[m];
        if (d.src(fm) != f.object_map[c.src(m)] || d.tgt(fm) != f.object_map[c.tgt(m)]) return false;
    }
    for (std::size_t x = 0; x < c.object_count(); ++x)
        if (f.morphism_map[c.identity(x)] != d.identity(f.object_map[x])) return false;
    for (std::size_t a = 0; a < c.morphism_count(); ++a)
        for (std::size_t b : c.outgoing(c.tgt(a)))
            if (f.morphism_map[c.comp(b, a)] != d.comp(f.morphism_map[b], f.morphism_map[a])) return false;
    return true;
}

/// second ∘ first.
inline Functor compose(const Functor& second, const Functor& first) {
    Functor h;
    for (auto x : first.object_map) h.object_map.push_back(second.object_map[x]);
    for (auto f : first.morphism_map) h.morphism_map.push_back(second.morphism_map[f]);
    return h;
}

inline Functor identity_functor(const FinCat& c) {
    Functor f;
    for (std::size_t x = 0; x < c.object_count(); ++x) f.object_map.push_back(x);
    for (std::size_t m = 0; m < c.morphism_count(); ++m) f.morphism_map.push_back(m);
    return f;
}

namespace detail {

class IsoSearch {
public:
    IsoSearch(const FinCat& c, const FinCat& d, SearchBudget& budget) : c_(c), d_(d), budget_(budget) {}

    std::optional<Functor> run() {
        const std::size_t n = c_.object_count();
        const std::size_t m = c_.morphism_count();
        if (n != d_.object_count() || m != d_.morphism_count()) return std::nullopt;

        for (std::size_t x = 0; x < n; ++x) {
            c_profile_.push_back(profile(c_, x));
            d_profile_.push_back(profile(d_, x));
        }
        {
            auto a = c_profile_, b = d_profile_;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) return std::nullopt;
        }

        composites_into_.assign(m, {});
        for (std::size_t f = 0; f < m; ++f)
            for (std::size_t g : c_.outgoing(c_.tgt(f))) composites_into_[c_.comp(g, f)].emplace_back(g, f);

        // Identities first, they are forced once objects are placed.
        for (std::size_t f = 0; f < m; ++f)
            if (c_.is_identity(f)) order_.push_back(f);
        for (std::size_t f = 0; f < m; ++f)
            if (!c_.is_identity(f)) order_.push_back(f);

        obj_.assign(n, npos);
        obj_used_.assign(n, false);
        mor_.assign(m, npos);
        mor_used_.assign(m, false);
        if (!assign_object(0)) return std::nullopt;
        return Functor{obj_, mor_};
    }

private:
    using Profile = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;

    static Profile profile(const FinCat& c, std::size_t x) {
        std::vector<std::size_t> row, col;
        for (std::size_t y = 0; y < c.object_count(); ++y) {
            row.push_back(c.hom_count(x, y));
            col.push_back(c.hom_count(y, x));
        }
        std::sort(row.begin(), row.end());
        std::sort(col.begin(), col.end());
        return {c.hom_count(x, x), std::move(row), std::move(col)};
    }

    bool assign_object(std::size_t x) {
        if (x == c_.object_count()) return assign_morphism(0);
        for (std::size_t y = 0; y < d_.object_count(); ++y) {
            if (obj_used_[y] || c_profile_[x] != d_profile_[y]) continue;
            budget_.spend();
            bool ok = true;
            for (std::size_t w = 0; w < x && ok; ++w)
                ok = c_.hom_count(w, x) == d_.hom_count(obj_[w], y) && c_.hom_count(x, w) == d_.hom_count(y, obj_[w]);
            if (!ok) continue;
            obj_[x] = y;
            obj_used_[y] = true;
            if (assign_object(x + 1)) return true;
            obj_used_[y] = false;
            obj_[x] = npos;
        }
        return false;
    }

    std::size_t image(std::size_t f, std::size_t self, std::size_t cand) const { return f == self ? cand : mor_[f]; }

    bool consistent(std::size_t f, std::size_t cand) const {
        // Pairs (g, f) and (f, g) whose composite is already placed.
        for (std::size_t g : c_.outgoing(c_.tgt(f))) {
            const std::size_t ig = image(g, f, cand);
            const std::size_t h = c_.comp(g, f);
            const std::size_t ih = image(h, f, cand);
            if (ig != npos && ih != npos && d_.comp(ig, cand) != ih) return false;
        }
        for (std::size_t g : c_.incoming(c_.src(f))) {
            const std::size_t ig = image(g, f, cand);
            const std::size_t h = c_.comp(f, g);
            const std::size_t ih = image(h, f, cand);
            if (ig != npos && ih != npos && d_.comp(cand, ig) != ih) return false;
        }
        for (auto [g, h] : composites_into_[f]) {
            const std::size_t ig = image(g, f, cand);
            const std::size_t ih = image(h, f, cand);
            if (ig != npos && ih != npos && d_.comp(ig, ih) != cand) return false;
        }
        return true;
    }

    bool assign_morphism(std::size_t idx) {
        if (idx == order_.size()) return true;
        const std::size_t f = order_[idx];
        const std::size_t fs = obj_[c_.src(f)], ft = obj_[c_.tgt(f)];
        for (std::size_t cand : d_.hom(fs, ft)) {
            if (mor_used_[cand]) continue;
            if (c_.is_identity(f) != d_.is_identity(cand)) continue;
            budget_.spend();
            if (!consistent(f, cand)) continue;
            mor_[f] = cand;
            mor_used_[cand] = true;
            if (assign_morphism(idx + 1)) return true;
            mor_used_[cand] = false;
            mor_[f] = npos;
        }
        return false;
    }

    const FinCat& c_;
    const FinCat& d_;
    SearchBudget& budget_;
    std::vector<Profile> c_profile_, d_profile_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> composites_into_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> obj_, mor_;
    std::vector<bool> obj_used_, mor_used_;
};

}  // namespace detail

/// An isomorphism of categories C -> D found by backtracking, or nullopt.
/// Throws BudgetExhausted if the search exceeds `budget`.
inline std::optional<Functor> categories_isomorphic(const FinCat& c, const FinCat& d, SearchBudget& budget) {
    return detail::IsoSearch(c, d, budget).run();
}

inline std::optional<Functor> categories_isomorphic(const FinCat& c, const FinCat& d) {
    SearchBudget budget;
    return categories_isomorphic(c, d, budget);
}

/// Functors forward: A -> B and backward: B -> A forming an equivalence.
struct Equivalence {
    Functor forward;
    Functor backward;
};

namespace detail {

/// C -> skeleton(C), sending f: x -> y to i_y ∘ f ∘ i_x⁻¹ where i_x is a
/// chosen isomorphism from x to its class representative.
inline Functor retraction_to_skeleton(const FinCat& c, const IsoPartition& p, const Subcategory& skel) {
    const std::size_t n = c.object_count();
    std::vector<std::size_t> to_rep(n), from_rep(n);
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t r = p.representatives[p.class_of[x]];
        if (r == x) {
            to_rep[x] = from_rep[x] = c.identity(x);
        } else {
            auto iso = find_isomorphism(c, x, r);
            to_rep[x] = iso->first;
            from_rep[x] = iso->second;
        }
    }
    std::vector<std::size_t> local(c.morphism_count(), npos);
    for (std::size_t i = 0; i < skel.morphism_embedding.size(); ++i) local[skel.morphism_embedding[i]] = i;

    Functor r;
    r.object_map = p.class_of;
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const std::size_t conj = c.comp(to_rep[c.tgt(f)], c.comp(f, from_rep[c.src(f)]));
        r.morphism_map.push_back(local[conj]);
    }
    return r;
}

inline Functor inclusion(const Subcategory& s) { return {s.object_embedding, s.morphism_embedding}; }

inline Functor invert_isomorphism(const Functor& f) {
    Functor g;
    g.object_map.assign(f.object_map.size(), npos);
    g.morphism_map.assign(f.morphism_map.size(), npos);
    for (std::size_t i = 0; i < f.object_map.size(); ++i) g.object_map[f.object_map[i]] = i;
    for (std::size_t i = 0; i < f.morphism_map.size(); ++i) g.morphism_map[f.morphism_map[i]] = i;
    return g;
}

}  // namespace detail

/// Decides equivalence by looking for an isomorphism between skeletons, and
/// assembles the witnessing functor pair when one exists.
inline std::optional<Equivalence> equivalence_witness(const FinCat& a, const FinCat& b, SearchBudget& budget) {
    const auto pa = iso_classes(a);
    const auto pb = iso_classes(b);
    const auto sa = full_subcategory(a, pa.representatives);
    const auto sb = full_subcategory(b, pb.representatives);
    auto phi = categories_isomorphic(sa.category, sb.category, budget);
    if (!phi) return std::nullopt;
    const Functor phi_inv = detail::invert_isomorphism(*phi);
    Equivalence e;
    e.forward = compose(detail::inclusion(sb), compose(*phi, detail::retraction_to_skeleton(a, pa, sa)));
    e.backward = compose(detail::inclusion(sa), compose(phi_inv, detail::retraction_to_skeleton(b, pb, sb)));
    return e;
}

inline std::optional<Equivalence> equivalence_witness(const FinCat& a, const FinCat& b) {
    SearchBudget budget;
    return equivalence_witness(a, b, budget);
}

inline bool equivalent(const FinCat& a, const FinCat& b, SearchBudget& budget) {
    return categories_isomorphic(skeleton(a), skeleton(b), budget).has_value();
}

inline bool equivalent(const FinCat& a, const FinCat& b) {
    SearchBudget budget;
    return equivalent(a, b, budget);
}

}  // namespace eulerkit
