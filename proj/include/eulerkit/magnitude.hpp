#pragma once

// Weightings, coweightings and the Euler characteristic of finite categories.

#include "eulerkit/fincat.hpp"
#include "eulerkit/matrix.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eulerkit {

enum class Side { weighting, coweighting };

struct Weighting {
    QVector values;
    Side side = Side::weighting;

    Rational total() const { return sum(values); }
};

struct EulerResult {
    bool exists = false;
    std::optional<Rational> value;
    std::optional<Weighting> weighting;
    std::optional<Weighting> coweighting;
    std::string reason;  // why no value exists, empty otherwise
};

struct AdjacencyMatrix {
    std::vector<std::size_t> ordering;
    QMatrix matrix;
};

/// Hom counts in the category's stored object order.
inline AdjacencyMatrix adjacency(const FinCat& c) {
    const std::size_t n = c.object_count();
    AdjacencyMatrix a{{}, QMatrix(n, n)};
    for (std::size_t x = 0; x < n; ++x) {
        a.ordering.push_back(x);
        for (std::size_t y = 0; y < n; ++y) a.matrix(x, y) = static_cast<std::int64_t>(c.hom_count(x, y));
    }
    return a;
}

inline QVector ones(std::size_t n) { return QVector(n, Rational(1)); }

/// True iff m * v = 1 (weighting side) or vᵀ m = 1ᵀ (coweighting side).
inline bool satisfies_weighting_equations(const QMatrix& m, std::span<const Rational> v, Side side) {
    const QMatrix& lhs = side == Side::weighting ? m : transpose(m);
    if (v.size() != lhs.cols()) return false;
    return lhs * v == ones(lhs.rows());
}

inline bool is_weighting(const FinCat& c, std::span<const Rational> v) {
    return satisfies_weighting_equations(adjacency(c).matrix, v, Side::weighting);
}

inline bool is_coweighting(const FinCat& c, std::span<const Rational> v) {
    return satisfies_weighting_equations(adjacency(c).matrix, v, Side::coweighting);
}

/// Full solution set of the weighting (or coweighting) equations of `m`.
inline LinearSolution weighting_solution(const QMatrix& m, Side side = Side::weighting) {
    if (side == Side::weighting) return solve_affine(m, ones(m.rows()));
    return solve_affine(transpose(m), ones(m.cols()));
}

inline LinearSolution weighting_solution(const FinCat& c, Side side = Side::weighting) {
    return weighting_solution(adjacency(c).matrix, side);
}

inline std::optional<Weighting> weighting_of_matrix(const QMatrix& m, Side side) {
    auto s = weighting_solution(m, side);
    if (!s.consistent) return std::nullopt;
    return Weighting{std::move(*s.particular), side};
}

inline std::optional<Weighting> weighting(const FinCat& c) {
    return weighting_of_matrix(adjacency(c).matrix, Side::weighting);
}

/// Weighting of the opposite category, read back as a coweighting of C.
inline std::optional<Weighting> coweighting(const FinCat& c) {
    auto w = weighting_of_matrix(adjacency(opposite(c)).matrix, Side::weighting);
    if (!w) return std::nullopt;
    w->side = Side::coweighting;
    return w;
}

/// χ of a square "adjacency" matrix: the common sum of a weighting and a
/// coweighting when both exist. A 0×0 matrix has χ = 0.
inline EulerResult euler_from_matrix(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("euler_from_matrix: matrix is not square");
    EulerResult r;
    r.weighting = weighting_of_matrix(m, Side::weighting);
    r.coweighting = weighting_of_matrix(m, Side::coweighting);
    if (!r.weighting && !r.coweighting) {
        r.reason = "no weighting and no coweighting";
    } else if (!r.weighting) {
        r.reason = "no weighting";
    } else if (!r.coweighting) {
        r.reason = "no coweighting";
    } else {
        r.exists = true;
        r.value = r.weighting->total();
        if (*r.value != r.coweighting->total())
            throw std::logic_error("weighting and coweighting sums differ");
    }
    return r;
}

inline EulerResult euler_char(const FinCat& c) {
    EulerResult r;
    r.weighting = weighting(c);
    r.coweighting = coweighting(c);
    if (!r.weighting || !r.coweighting) {
        r.reason = !r.weighting && !r.coweighting ? "no weighting and no coweighting"
                   : !r.weighting                 ? "no weighting"
                                                  : "no coweighting";
        return r;
    }
    r.exists = true;
    r.value = r.weighting->total();
    if (*r.value != r.coweighting->total()) throw std::logic_error("weighting and coweighting sums differ");
    return r;
}

/// Replaces each entry by the mean of its class: out[x] = (Σ_{y~x} v[y]) / |[x]|.
inline QVector average_over_classes(std::span<const Rational> v, std::span<const std::size_t> class_of) {
    std::size_t classes = 0;
    for (auto c : class_of) classes = std::max(classes, c + 1);
    std::vector<Rational> total(classes);
    std::vector<std::int64_t> size(classes, 0);
    for (std::size_t x = 0; x < v.size(); ++x) {
        total[class_of[x]] += v[x];
        ++size[class_of[x]];
    }
    QVector out;
    for (std::size_t x = 0; x < v.size(); ++x) out.push_back(total[class_of[x]] / Rational(size[class_of[x]]));
    return out;
}

inline bool constant_on_classes(std::span<const Rational> v, std::span<const std::size_t> class_of) {
    for (std::size_t x = 0; x < v.size(); ++x)
        for (std::size_t y = x + 1; y < v.size(); ++y)
            if (class_of[x] == class_of[y] && v[x] != v[y]) return false;
    return true;
}

/// A weighting that is constant on isomorphism classes, or nullopt when C
/// has no weighting.
inline std::optional<Weighting> constant_weighting(const FinCat& c) {
    auto w = weighting(c);
    if (!w) return std::nullopt;
    w->values = average_over_classes(w->values, iso_classes(c).class_of);
    return w;
}

inline std::optional<Weighting> constant_coweighting(const FinCat& c) {
    auto w = coweighting(c);
    if (!w) return std::nullopt;
    w->values = average_over_classes(w->values, iso_classes(c).class_of);
    return w;
}

/// Pulls a class-constant (co)weighting ℓ on B back along the forward functor
/// of an equivalence A ≃ B: k(a) = (1/|[a]|) Σ_{b ≅ F(a)} ℓ(b).
/// The result has the same side as ℓ and the same total.
inline Weighting transport_weighting(const Equivalence& eq, const FinCat& a, const FinCat& b, const Weighting& ell) {
    if (ell.values.size() != b.object_count())
        throw std::invalid_argument("transport_weighting: weighting has the wrong length");
    const auto pa = iso_classes(a);
    const auto pb = iso_classes(b);
    if (!constant_on_classes(ell.values, pb.class_of))
        throw std::invalid_argument("transport_weighting: input weighting is not constant on isomorphism classes");

    std::vector<Rational> class_total(pb.class_count());
    for (std::size_t y = 0; y < b.object_count(); ++y) class_total[pb.class_of[y]] += ell.values[y];

    Weighting k{{}, ell.side};
    for (std::size_t x = 0; x < a.object_count(); ++x) {
        const std::size_t target_class = pb.class_of[eq.forward.object_map[x]];
        const auto size = static_cast<std::int64_t>(pa.class_size(pa.class_of[x]));
        k.values.push_back(class_total[target_class] / Rational(size));
    }
    return k;
}

}  // namespace eulerkit
