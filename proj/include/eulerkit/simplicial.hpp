#pragma once

// Simplicial sets truncated at a finite dimension, nerves of finite
// categories, and inner-horn filler analysis.

#include "eulerkit/fincat.hpp"
#include "eulerkit/magnitude.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace eulerkit {

/// Unvalidated tables. faces[n][i][s] = d_i of the s-th n-simplex (n >= 1,
/// 0 <= i <= n); degeneracies[n][i][s] = s_i of it (n < dim, 0 <= i <= n).
/// Entries are indices into the adjacent level; npos marks a missing entry.
struct RawSSet {
    std::size_t dim = 0;
    std::vector<std::vector<std::string>> simplices;  // dim + 1 levels
    std::vector<std::vector<std::vector<std::size_t>>> faces;
    std::vector<std::vector<std::vector<std::size_t>>> degeneracies;
};

class TruncatedSSet;
TruncatedSSet validate_sset(const RawSSet& raw);

namespace detail {
TruncatedSSet trusted_sset(RawSSet raw);
}

class TruncatedSSet {
public:
    std::size_t dim() const { return raw_.dim; }
    std::size_t count(std::size_t n) const { return raw_.simplices[n].size(); }
    const std::vector<std::string>& simplices(std::size_t n) const { return raw_.simplices[n]; }
    const std::string& id(std::size_t n, std::size_t s) const { return raw_.simplices[n][s]; }
    std::size_t face(std::size_t n, std::size_t i, std::size_t s) const { return raw_.faces[n][i][s]; }
    std::size_t degeneracy(std::size_t n, std::size_t i, std::size_t s) const { return raw_.degeneracies[n][i][s]; }
    const RawSSet& raw() const { return raw_; }

    std::vector<std::size_t> counts() const {
        std::vector<std::size_t> c;
        for (const auto& level : raw_.simplices) c.push_back(level.size());
        return c;
    }

    std::optional<std::size_t> find(std::size_t n, const std::string& id) const {
        const auto& level = raw_.simplices[n];
        for (std::size_t s = 0; s < level.size(); ++s)
            if (level[s] == id) return s;
        return std::nullopt;
    }

private:
    friend TruncatedSSet validate_sset(const RawSSet& raw);
    friend TruncatedSSet detail::trusted_sset(RawSSet raw);
    RawSSet raw_;
};

namespace detail {
inline TruncatedSSet trusted_sset(RawSSet raw) {
    TruncatedSSet x;
    x.raw_ = std::move(raw);
    return x;
}

inline RawSSet empty_tables(std::size_t dim, const std::vector<std::size_t>& counts) {
    RawSSet r;
    r.dim = dim;
    r.simplices.resize(dim + 1);
    r.faces.resize(dim + 1);
    r.degeneracies.resize(dim + 1);
    for (std::size_t n = 0; n <= dim; ++n) {
        if (n >= 1) r.faces[n].assign(n + 1, std::vector<std::size_t>(counts[n], npos));
        if (n < dim) r.degeneracies[n].assign(n + 1, std::vector<std::size_t>(counts[n], npos));
    }
    return r;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Validation

/// Shape and range problems, then every failing instance of the five
/// simplicial identities that lies inside the truncation.
inline std::vector<Violation> check_sset(const RawSSet& raw) {
    std::vector<Violation> v;
    const std::size_t N = raw.dim;
    if (raw.simplices.size() != N + 1 || raw.faces.size() != N + 1 || raw.degeneracies.size() != N + 1) {
        v.push_back({"shape", "expected " + std::to_string(N + 1) + " levels", {}});
        return v;
    }
    for (std::size_t n = 0; n <= N; ++n) {
        std::set<std::string> seen;
        for (const auto& s : raw.simplices[n])
            if (!seen.insert(s).second)
                v.push_back({"duplicate-name", "duplicate " + std::to_string(n) + "-simplex '" + s + "'", {n}});
        const std::size_t cnt = raw.simplices[n].size();
        auto check_map = [&](const std::vector<std::vector<std::size_t>>& maps, std::size_t expected_maps,
                             std::size_t target_count, const char* what) {
            if (maps.size() != expected_maps) {
                v.push_back({"shape", std::string("level ") + std::to_string(n) + " has the wrong number of " + what +
                                          " maps",
                             {n}});
                return;
            }
            for (std::size_t i = 0; i < maps.size(); ++i) {
                if (maps[i].size() != cnt) {
                    v.push_back({"shape", std::string(what) + " map " + std::to_string(n) + "," + std::to_string(i) +
                                              " is not total",
                                 {n, i}});
                    continue;
                }
                for (std::size_t s = 0; s < cnt; ++s)
                    if (maps[i][s] >= target_count)
                        v.push_back({"shape", std::string(what) + " " + std::to_string(n) + "," + std::to_string(i) +
                                                  " of '" + raw.simplices[n][s] + "' is missing or out of range",
                                     {n, i, s}});
            }
        };
        check_map(raw.faces[n], n >= 1 ? n + 1 : 0, n >= 1 ? raw.simplices[n - 1].size() : 0, "face");
        check_map(raw.degeneracies[n], n < N ? n + 1 : 0, n < N ? raw.simplices[n + 1].size() : 0, "degeneracy");
    }
    if (!v.empty()) return v;

    auto d = [&](std::size_t n, std::size_t i, std::size_t s) { return raw.faces[n][i][s]; };
    auto sg = [&](std::size_t n, std::size_t i, std::size_t s) { return raw.degeneracies[n][i][s]; };
    auto fail = [&](int identity, std::size_t n, std::size_t i, std::size_t j, std::size_t s) {
        v.push_back({"simplicial-identity-" + std::to_string(identity),
                     "identity (" + std::to_string(identity) + ") fails at n=" + std::to_string(n) + ", i=" +
                         std::to_string(i) + ", j=" + std::to_string(j) + ", simplex '" + raw.simplices[n][s] + "'",
                     {n, i, j, s}});
    };

    for (std::size_t n = 0; n <= N; ++n)
        for (std::size_t s = 0; s < raw.simplices[n].size(); ++s) {
            // (1) d_i d_j = d_{j-1} d_i, i < j
            if (n >= 2)
                for (std::size_t j = 1; j <= n; ++j)
                    for (std::size_t i = 0; i < j; ++i)
                        if (d(n - 1, i, d(n, j, s)) != d(n - 1, j - 1, d(n, i, s))) fail(1, n, i, j, s);
            if (n >= N) continue;
            for (std::size_t j = 0; j <= n; ++j) {
                const std::size_t up = sg(n, j, s);
                // (2) d_i s_j = s_{j-1} d_i, i < j
                if (n >= 1)
                    for (std::size_t i = 0; i < j; ++i)
                        if (d(n + 1, i, up) != sg(n - 1, j - 1, d(n, i, s))) fail(2, n, i, j, s);
                // (3) d_j s_j = d_{j+1} s_j = 1
                if (d(n + 1, j, up) != s || d(n + 1, j + 1, up) != s) fail(3, n, j, j, s);
                // (4) d_i s_j = s_j d_{i-1}, i > j + 1
                if (n >= 1)
                    for (std::size_t i = j + 2; i <= n + 1; ++i)
                        if (d(n + 1, i, up) != sg(n - 1, j, d(n, i - 1, s))) fail(4, n, i, j, s);
                // (5) s_i s_j = s_{j+1} s_i, i <= j
                if (n + 1 < N)
                    for (std::size_t i = 0; i <= j; ++i)
                        if (sg(n + 1, i, up) != sg(n + 1, j + 1, sg(n, i, s))) fail(5, n, i, j, s);
            }
        }
    return v;
}

inline TruncatedSSet validate_sset(const RawSSet& raw) {
    auto v = check_sset(raw);
    if (!v.empty()) throw ValidationError("invalid simplicial set: " + summarize(v), std::move(v));
    TruncatedSSet x;
    x.raw_ = raw;
    return x;
}

// ---------------------------------------------------------------------------
// Standard simplices, horns, points

namespace detail {

inline std::string sequence_id(const std::vector<std::size_t>& seq, std::size_t top) {
    std::string s;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i && top > 9) s += '.';
        s += std::to_string(seq[i]);
    }
    return s;
}

/// Builds a simplicial set whose m-simplices are given sequences, with faces
/// dropping entry i and degeneracies repeating entry i.
inline TruncatedSSet from_sequences(std::size_t dim, const std::vector<std::vector<std::vector<std::size_t>>>& levels,
                                    std::size_t top) {
    std::vector<std::size_t> counts;
    for (const auto& l : levels) counts.push_back(l.size());
    RawSSet r = empty_tables(dim, counts);
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(dim + 1);
    for (std::size_t m = 0; m <= dim; ++m)
        for (std::size_t s = 0; s < levels[m].size(); ++s) {
            index[m][levels[m][s]] = s;
            r.simplices[m].push_back(sequence_id(levels[m][s], top));
        }
    for (std::size_t m = 0; m <= dim; ++m)
        for (std::size_t s = 0; s < levels[m].size(); ++s) {
            const auto& a = levels[m][s];
            if (m >= 1)
                for (std::size_t i = 0; i <= m; ++i) {
                    auto b = a;
                    b.erase(b.begin() + static_cast<std::ptrdiff_t>(i));
                    r.faces[m][i][s] = index[m - 1].at(b);
                }
            if (m < dim)
                for (std::size_t i = 0; i <= m; ++i) {
                    auto b = a;
                    b.insert(b.begin() + static_cast<std::ptrdiff_t>(i), a[i]);
                    r.degeneracies[m][i][s] = index[m + 1].at(b);
                }
        }
    return trusted_sset(std::move(r));
}

/// Nondecreasing sequences of length m+1 with entries in 0..top, in
/// lexicographic order: the order-preserving maps [m] -> [top].
inline std::vector<std::vector<std::size_t>> monotone_maps(std::size_t m, std::size_t top) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(m + 1, 0);
    while (true) {
        out.push_back(cur);
        std::size_t p = m + 1;
        while (p > 0 && cur[p - 1] == top) --p;
        if (p == 0) break;
        const std::size_t v = cur[p - 1] + 1;
        for (std::size_t q = p - 1; q <= m; ++q) cur[q] = v;
    }
    return out;
}

}  // namespace detail

/// Δ[n] truncated at dimension `dim`: m-simplices are order-preserving maps
/// [m] -> [n] written as nondecreasing sequences, e.g. "012" or "0012".
inline TruncatedSSet standard_simplex(std::size_t n, std::size_t dim) {
    std::vector<std::vector<std::vector<std::size_t>>> levels;
    for (std::size_t m = 0; m <= dim; ++m) levels.push_back(detail::monotone_maps(m, n));
    return detail::from_sequences(dim, levels, n);
}

/// The horn Λ[n,k]: simplices of Δ[n] that factor through some face d_i with
/// i != k, i.e. whose image together with k does not cover [n].
inline TruncatedSSet horn(std::size_t n, std::size_t k, std::size_t dim) {
    if (k > n) throw std::invalid_argument("horn: k must not exceed n");
    std::vector<std::vector<std::vector<std::size_t>>> levels;
    for (std::size_t m = 0; m <= dim; ++m) {
        levels.emplace_back();
        for (auto& a : detail::monotone_maps(m, n)) {
            std::vector<bool> hit(n + 1, false);
            for (auto v : a) hit[v] = true;
            hit[k] = true;
            if (std::find(hit.begin(), hit.end(), false) != hit.end()) levels.back().push_back(std::move(a));
        }
    }
    return detail::from_sequences(dim, levels, n);
}

inline TruncatedSSet empty_sset(std::size_t dim) {
    return detail::trusted_sset(detail::empty_tables(dim, std::vector<std::size_t>(dim + 1, 0)));
}

/// The one-point simplicial set: a single simplex "*" in every dimension.
inline TruncatedSSet point_sset(std::size_t dim) {
    RawSSet r = detail::empty_tables(dim, std::vector<std::size_t>(dim + 1, 1));
    for (std::size_t n = 0; n <= dim; ++n) {
        r.simplices[n] = {"*"};
        for (auto& f : r.faces[n]) f[0] = 0;
        for (auto& s : r.degeneracies[n]) s[0] = 0;
    }
    return detail::trusted_sset(std::move(r));
}

// ---------------------------------------------------------------------------
// Nerve

/// N(C) truncated at `dim`. n-simplices are composable paths (f1, ..., fn),
/// listed by extending paths in morphism order; ids join names with ";".
/// d_0 drops f1, d_n drops fn, d_i composes f_{i+1} ∘ f_i; s_i inserts the
/// identity at the i-th vertex.
inline TruncatedSSet nerve(const FinCat& c, std::size_t dim) {
    using Path = std::vector<std::size_t>;
    std::vector<std::vector<Path>> levels(dim + 1);
    if (dim >= 1)
        for (std::size_t f = 0; f < c.morphism_count(); ++f) levels[1].push_back({f});
    for (std::size_t n = 2; n <= dim; ++n)
        for (const auto& p : levels[n - 1])
            for (std::size_t g : c.outgoing(c.tgt(p.back()))) {
                auto q = p;
                q.push_back(g);
                levels[n].push_back(std::move(q));
            }

    std::vector<std::size_t> counts{c.object_count()};
    for (std::size_t n = 1; n <= dim; ++n) counts.push_back(levels[n].size());
    RawSSet r = detail::empty_tables(dim, counts);
    std::vector<std::map<Path, std::size_t>> index(dim + 1);
    r.simplices[0] = c.objects();
    for (std::size_t n = 1; n <= dim; ++n)
        for (std::size_t s = 0; s < levels[n].size(); ++s) {
            index[n][levels[n][s]] = s;
            std::string id;
            for (std::size_t i = 0; i < levels[n][s].size(); ++i) {
                if (i) id += ';';
                id += c.morphism(levels[n][s][i]).name;
            }
            r.simplices[n].push_back(std::move(id));
        }

    auto vertex = [&c](const Path& p, std::size_t i) { return i == 0 ? c.src(p[0]) : c.tgt(p[i - 1]); };

    if (dim >= 1)
        for (std::size_t x = 0; x < c.object_count(); ++x) r.degeneracies[0][0][x] = index[1].at({c.identity(x)});
    for (std::size_t n = 1; n <= dim; ++n)
        for (std::size_t s = 0; s < levels[n].size(); ++s) {
            const Path& p = levels[n][s];
            if (n == 1) {
                r.faces[1][0][s] = c.tgt(p[0]);
                r.faces[1][1][s] = c.src(p[0]);
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    Path q;
                    if (i == 0) {
                        q.assign(p.begin() + 1, p.end());
                    } else if (i == n) {
                        q.assign(p.begin(), p.end() - 1);
                    } else {
                        q.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i) - 1);
                        q.push_back(c.comp(p[i], p[i - 1]));
                        q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.end());
                    }
                    r.faces[n][i][s] = index[n - 1].at(q);
                }
            }
            if (n < dim)
                for (std::size_t i = 0; i <= n; ++i) {
                    Path q = p;
                    q.insert(q.begin() + static_cast<std::ptrdiff_t>(i), c.identity(vertex(p, i)));
                    r.degeneracies[n][i][s] = index[n + 1].at(q);
                }
        }
    return detail::trusted_sset(std::move(r));
}

// ---------------------------------------------------------------------------
// Inner horns and fillers

/// faces[i] is the (n-1)-simplex placed at face i; faces[k] is npos.
struct HornInstance {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::size_t> faces;
};

namespace detail {

/// by_face[n][i] maps an (n-1)-simplex t to the n-simplices s with d_i s = t.
class FaceIndex {
public:
    explicit FaceIndex(const TruncatedSSet& x) : x_(x), by_face_(x.dim() + 1) {}

    const std::vector<std::size_t>& with_face(std::size_t n, std::size_t i, std::size_t t) {
        auto& level = by_face_[n];
        if (level.empty()) {
            level.assign(n + 1, std::vector<std::vector<std::size_t>>(x_.count(n - 1)));
            for (std::size_t s = 0; s < x_.count(n); ++s)
                for (std::size_t j = 0; j <= n; ++j) level[j][x_.face(n, j, s)].push_back(s);
        }
        return level[i][t];
    }

    const TruncatedSSet& sset() const { return x_; }

private:
    const TruncatedSSet& x_;
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> by_face_;
};

inline void extend_horn(FaceIndex& idx, const std::vector<std::size_t>& positions, std::size_t depth,
                        HornInstance& h, std::vector<HornInstance>& out) {
    const TruncatedSSet& x = idx.sset();
    const std::size_t n = h.n;
    if (depth == positions.size()) {
        out.push_back(h);
        return;
    }
    const std::size_t j = positions[depth];
    auto compatible = [&](std::size_t cand) {
        for (std::size_t p = 0; p < depth; ++p) {
            const std::size_t i = positions[p];
            if (x.face(n - 1, i, cand) != x.face(n - 1, j - 1, h.faces[i])) return false;
        }
        return true;
    };
    if (depth == 0 || n - 1 == 0) {
        for (std::size_t cand = 0; cand < x.count(n - 1); ++cand) {
            if (!compatible(cand)) continue;
            h.faces[j] = cand;
            extend_horn(idx, positions, depth + 1, h, out);
        }
    } else {
        const std::size_t i0 = positions[0];
        const auto& cands = idx.with_face(n - 1, i0, x.face(n - 1, j - 1, h.faces[i0]));
        for (std::size_t cand : cands) {
            if (!compatible(cand)) continue;
            h.faces[j] = cand;
            extend_horn(idx, positions, depth + 1, h, out);
        }
    }
    h.faces[j] = npos;
}

inline std::vector<HornInstance> inner_horns(FaceIndex& idx, std::size_t n, std::size_t k) {
    const TruncatedSSet& x = idx.sset();
    if (!(0 < k && k < n && n <= x.dim())) throw std::invalid_argument("inner horn requires 0 < k < n <= dim");
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i <= n; ++i)
        if (i != k) positions.push_back(i);
    HornInstance h{n, k, std::vector<std::size_t>(n + 1, npos)};
    std::vector<HornInstance> out;
    extend_horn(idx, positions, 0, h, out);
    return out;
}

inline std::vector<std::size_t> horn_fillers(FaceIndex& idx, const HornInstance& h) {
    const TruncatedSSet& x = idx.sset();
    const std::size_t first = h.k == 0 ? 1 : 0;
    std::vector<std::size_t> out;
    for (std::size_t z : idx.with_face(h.n, first, h.faces[first])) {
        bool ok = true;
        for (std::size_t i = 0; i <= h.n && ok; ++i)
            if (i != h.k) ok = x.face(h.n, i, z) == h.faces[i];
        if (ok) out.push_back(z);
    }
    return out;
}

}  // namespace detail

/// Every compatible family of faces for Λ[n,k] in X, 0 < k < n <= dim.
inline std::vector<HornInstance> enumerate_inner_horns(const TruncatedSSet& x, std::size_t n, std::size_t k) {
    detail::FaceIndex idx(x);
    return detail::inner_horns(idx, n, k);
}

/// n-simplices whose faces other than the k-th match the horn.
inline std::vector<std::size_t> fillers(const TruncatedSSet& x, const HornInstance& h) {
    if (h.faces.size() != h.n + 1 || h.n > x.dim() || h.n == 0) throw std::invalid_argument("fillers: malformed horn");
    detail::FaceIndex idx(x);
    return detail::horn_fillers(idx, h);
}

struct FillerCount {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t horns = 0;
    std::size_t unfilled = 0;      // horns with no filler
    std::size_t multi_filled = 0;  // horns with two or more fillers
};

/// Filler statistics for every inner horn up to the truncation dimension.
/// Horns of dimension dim + 1 are not checked.
struct FillerReport {
    std::size_t checked_dim = 0;
    std::vector<FillerCount> counts;
    bool quasi_category = true;
    bool nerve_shaped = true;
};

inline FillerReport filler_report(const TruncatedSSet& x) {
    FillerReport r;
    r.checked_dim = x.dim();
    detail::FaceIndex idx(x);
    for (std::size_t n = 2; n <= x.dim(); ++n)
        for (std::size_t k = 1; k < n; ++k) {
            FillerCount c{n, k, 0, 0, 0};
            for (const auto& h : detail::inner_horns(idx, n, k)) {
                ++c.horns;
                const auto f = detail::horn_fillers(idx, h).size();
                if (f == 0) ++c.unfilled;
                if (f >= 2) ++c.multi_filled;
            }
            if (c.unfilled) r.quasi_category = false;
            if (c.unfilled || c.multi_filled) r.nerve_shaped = false;
            r.counts.push_back(c);
        }
    return r;
}

class NotNerveShaped : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a category off a nerve-shaped simplicial set: objects are vertices,
/// morphisms are edges, identities are s_0, and g ∘ f is d_1 of the unique
/// filler of the (2,1)-horn on (f, g). The result is re-validated.
inline FinCat category_from_nerve(const TruncatedSSet& x) {
    if (x.dim() < 2) throw std::invalid_argument("category_from_nerve: need dimension at least 2");
    if (!filler_report(x).nerve_shaped) throw NotNerveShaped("not nerve-shaped: some inner horn lacks a unique filler");

    RawCategory raw;
    raw.objects = x.simplices(0);
    for (std::size_t f = 0; f < x.count(1); ++f) raw.morphisms.push_back({x.id(1, f), x.face(1, 1, f), x.face(1, 0, f)});
    for (std::size_t v = 0; v < x.count(0); ++v) raw.identities.emplace_back(x.degeneracy(0, 0, v));

    detail::FaceIndex idx(x);
    for (const auto& h : detail::inner_horns(idx, 2, 1)) {
        const auto z = detail::horn_fillers(idx, h);
        // faces[2] = d_2 z is the first edge, faces[0] = d_0 z the second.
        raw.composition.push_back({h.faces[2], h.faces[0], x.face(2, 1, z.front())});
    }
    return validate_category(raw);
}

// ---------------------------------------------------------------------------
// Coproduct and product

inline TruncatedSSet sset_coproduct(const TruncatedSSet& x, const TruncatedSSet& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("truncation mismatch");
    const std::size_t N = x.dim();
    std::vector<std::size_t> counts;
    for (std::size_t n = 0; n <= N; ++n) counts.push_back(x.count(n) + y.count(n));
    RawSSet r = detail::empty_tables(N, counts);
    for (std::size_t n = 0; n <= N; ++n) {
        std::set<std::string> taken(x.simplices(n).begin(), x.simplices(n).end());
        r.simplices[n] = x.simplices(n);
        for (const auto& id : y.simplices(n)) {
            r.simplices[n].push_back(detail::fresh_name(id, taken));
            taken.insert(r.simplices[n].back());
        }
        const std::size_t off = x.count(n);
        if (n >= 1)
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t s = 0; s < x.count(n); ++s) r.faces[n][i][s] = x.face(n, i, s);
                for (std::size_t s = 0; s < y.count(n); ++s) r.faces[n][i][off + s] = y.face(n, i, s) + x.count(n - 1);
            }
        if (n < N)
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t s = 0; s < x.count(n); ++s) r.degeneracies[n][i][s] = x.degeneracy(n, i, s);
                for (std::size_t s = 0; s < y.count(n); ++s)
                    r.degeneracies[n][i][off + s] = y.degeneracy(n, i, s) + x.count(n + 1);
            }
    }
    return detail::trusted_sset(std::move(r));
}

/// Levelwise product; the pair (a, b) sits at index a * |Y_n| + b.
inline TruncatedSSet sset_product(const TruncatedSSet& x, const TruncatedSSet& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("truncation mismatch");
    const std::size_t N = x.dim();
    std::vector<std::size_t> counts;
    for (std::size_t n = 0; n <= N; ++n) counts.push_back(x.count(n) * y.count(n));
    RawSSet r = detail::empty_tables(N, counts);
    for (std::size_t n = 0; n <= N; ++n) {
        for (const auto& a : x.simplices(n))
            for (const auto& b : y.simplices(n)) r.simplices[n].push_back("(" + a + "," + b + ")");
        const std::size_t yn = y.count(n);
        for (std::size_t a = 0; a < x.count(n); ++a)
            for (std::size_t b = 0; b < yn; ++b) {
                const std::size_t s = a * yn + b;
                if (n >= 1)
                    for (std::size_t i = 0; i <= n; ++i)
                        r.faces[n][i][s] = x.face(n, i, a) * y.count(n - 1) + y.face(n, i, b);
                if (n < N)
                    for (std::size_t i = 0; i <= n; ++i)
                        r.degeneracies[n][i][s] = x.degeneracy(n, i, a) * y.count(n + 1) + y.degeneracy(n, i, b);
            }
    }
    return detail::trusted_sset(std::move(r));
}

// ---------------------------------------------------------------------------
// Euler characteristic on the nerve fragment

/// χ where it is determined: 0 on the empty simplicial set, 1 on the point,
/// χ of the reconstructed category on nerve-shaped input. Anything else is
/// reported as undefined.
inline EulerResult chi_sset(const TruncatedSSet& x) {
    if (x.dim() < 2) throw std::invalid_argument("chi_sset: need dimension at least 2");
    const auto counts = x.counts();
    EulerResult r;
    if (std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 0; })) {
        r.exists = true;
        r.value = Rational(0);
        return r;
    }
    if (std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 1; })) {
        r.exists = true;
        r.value = Rational(1);
        return r;
    }
    if (!filler_report(x).nerve_shaped) {
        r.reason = "not nerve-shaped; no Euler characteristic is assigned to general simplicial sets";
        return r;
    }
    try {
        return euler_char(category_from_nerve(x));
    } catch (const ValidationError& e) {
        r.reason = std::string("edges do not form a category: ") + e.what();
        return r;
    }
}

}  // namespace eulerkit
