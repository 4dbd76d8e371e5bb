// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fail.
// All comparisons are exact rational equality.

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace eulerkit;
using namespace testgen;

namespace {

// Tolerance for every numeric comparison below: none. Values are rationals.
constexpr int kTolerance = 0;
static_assert(kTolerance == 0);

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(BigInt(n), BigInt(d)); }

struct Check {
    std::vector<std::string> failures;
    std::size_t cases = 0;
    std::string note;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string str(const std::optional<Rational>& v) { return v ? v->str() : "undefined"; }

bool same_chi(const EulerResult& a, const EulerResult& b) {
    if (a.exists != b.exists) return false;
    return !a.exists || *a.value == *b.value;
}

std::string vec(const QVector& v) { return format_vector(v); }

// Catalogue for criteria that need more than the generated suite: extra
// random posets and preorders, with their opposites.
std::vector<Named> wide_suite() {
    auto s = generated_suite();
    for (std::uint32_t seed = 200; seed < 240; ++seed) {
        s.push_back({"poset" + std::to_string(seed), random_poset(2 + seed % 5, seed)});
        s.push_back({"preorder" + std::to_string(seed), random_preorder(2 + seed % 4, seed)});
    }
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) s.push_back({s[i].name + "^op", opposite(s[i].cat)});
    return s;
}

// ---------------------------------------------------------------------------

Check c1_values() {
    Check c;
    auto chi_is = [&](const std::string& name, const FinCat& cat, const Rational& want) {
        ++c.cases;
        const auto r = euler_char(cat);
        c.expect(r.exists && *r.value == want, name + ": chi " + str(r.value) + ", want " + want.str());
    };
    const auto ta = euler_char(two_arrow());
    chi_is("two_arrow", two_arrow(), q(1));
    c.expect(ta.weighting && ta.weighting->values == QVector{0, 1}, "two_arrow weighting");
    c.expect(ta.coweighting && ta.coweighting->values == QVector{1, 0}, "two_arrow coweighting");

    const auto to = euler_char(three_object());
    chi_is("three_object", three_object(), q(1));
    c.expect(to.weighting && to.weighting->values == QVector{0, 0, 1},
             "three_object weighting " + (to.weighting ? vec(to.weighting->values) : "none"));
    c.expect(to.coweighting && to.coweighting->values == QVector{1, 0, 0},
             "three_object coweighting " + (to.coweighting ? vec(to.coweighting->values) : "none"));

    for (std::size_t n = 0; n <= 6; ++n)
        chi_is("discrete" + std::to_string(n), discrete_category(n), q(static_cast<std::int64_t>(n)));
    for (std::size_t m : {1, 2, 3, 4, 6})
        chi_is("Z" + std::to_string(m), cyclic_group(m), q(1, static_cast<std::int64_t>(m)));
    chi_is("Z2xZ2", klein_four(), q(1, 4));
    chi_is("empty", empty_category(), q(0));
    return c;
}

Check c2_terminal_initial() {
    Check c;
    for (const auto& [name, cat] : wide_suite()) {
        if (!has_terminal_or_initial(cat)) continue;
        ++c.cases;
        const auto r = euler_char(cat);
        c.expect(r.exists && *r.value == q(1), name + ": chi " + str(r.value));
    }
    c.expect(c.cases >= 20, "only " + std::to_string(c.cases) + " instances");
    c.note = std::to_string(c.cases) + " instances";
    return c;
}

Check c3_sums_products() {
    Check c;
    std::vector<Named> pool;
    for (auto& e : base_suite())
        if (euler_char(e.cat).exists && e.cat.morphism_count() <= 20) pool.push_back(std::move(e));
    std::mt19937 rng(20261016);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    while (c.cases < 60) {
        const auto& [na, a] = pool[pick(rng)];
        const auto& [nb, b] = pool[pick(rng)];
        ++c.cases;
        const std::string tag = na + "," + nb;
        const Rational xa = *euler_char(a).value, xb = *euler_char(b).value;
        const auto sum = euler_char(coproduct(a, b));
        c.expect(sum.exists && *sum.value == xa + xb, tag + ": coproduct chi " + str(sum.value));
        const auto ab = product(a, b);
        const auto prod = euler_char(ab);
        c.expect(prod.exists && *prod.value == xa * xb, tag + ": product chi " + str(prod.value));

        // entry ((a,b),(a',b')) is |A(a,a')|·|B(b,b')|, rows in lexicographic order
        const auto m = adjacency(ab).matrix;
        const std::size_t nb_ = b.object_count();
        bool kron = m.rows() == a.object_count() * nb_;
        for (std::size_t i = 0; kron && i < m.rows(); ++i)
            for (std::size_t j = 0; kron && j < m.cols(); ++j)
                kron = m(i, j) == Rational(static_cast<std::int64_t>(a.hom_count(i / nb_, j / nb_) *
                                                                     b.hom_count(i % nb_, j % nb_)));
        c.expect(kron, tag + ": adjacency is not the Kronecker product");
    }
    c.note = std::to_string(c.cases) + " pairs";
    return c;
}

Check c4_equivalence() {
    Check c;
    for (const auto& [name, cat] : generated_suite()) {
        const auto r = euler_char(cat);
        if (!r.exists) continue;
        ++c.cases;
        const auto s = skeleton(cat);
        const auto rs = euler_char(s);
        c.expect(rs.exists && *rs.value == *r.value, name + ": skeleton chi " + str(rs.value));
        const auto eq = equivalence_witness(cat, s);
        c.expect(eq.has_value(), name + ": not equivalent to its skeleton");
        if (!eq) continue;
        c.expect(is_functor(eq->forward, cat, s) && is_functor(eq->backward, s, cat), name + ": witness not functors");
        const auto ell = constant_weighting(s);
        if (!ell) {
            c.expect(false, name + ": skeleton has no weighting");
            continue;
        }
        const auto k = transport_weighting(*eq, cat, s, *ell);
        c.expect(is_weighting(cat, k.values), name + ": transported vector is not a weighting");
        c.expect(k.total() == *r.value, name + ": transported sum " + k.total().str());
    }
    c.note = std::to_string(c.cases) + " categories";
    return c;
}

Check c5_weighting_lemmas() {
    Check c;
    std::size_t shifts = 0;
    for (const auto& [name, cat] : generated_suite()) {
        const auto classes = iso_classes(cat).class_of;
        const auto m = adjacency(cat).matrix;
        if (const auto w = constant_weighting(cat)) {
            ++c.cases;
            c.expect(satisfies_weighting_equations(m, w->values, Side::weighting), name + ": constant weighting fails");
            c.expect(constant_on_classes(w->values, classes), name + ": not constant on iso classes");
        }
        if (!coweighting(cat)) continue;
        const auto sol = weighting_solution(cat, Side::weighting);
        if (!sol.consistent) continue;
        const Rational base = sum(*sol.particular);
        const std::size_t k = sol.nullspace_basis.size();
        // every coefficient vector in {-1, 1, 2}^k
        std::size_t combos = 1;
        for (std::size_t i = 0; i < k; ++i) combos *= 3;
        const std::int64_t coeffs[] = {-1, 1, 2};
        for (std::size_t code = 0; code < combos; ++code) {
            QVector v = *sol.particular;
            std::size_t rest = code;
            for (std::size_t i = 0; i < k; ++i, rest /= 3)
                for (std::size_t x = 0; x < v.size(); ++x) v[x] += Rational(coeffs[rest % 3]) * sol.nullspace_basis[i][x];
            ++shifts;
            c.expect(satisfies_weighting_equations(m, v, Side::weighting), name + ": shifted vector not a weighting");
            c.expect(sum(v) == base, name + ": shifted sum " + sum(v).str() + " vs " + base.str());
        }
    }
    c.note = std::to_string(c.cases) + " constant weightings, " + std::to_string(shifts) + " shifts";
    return c;
}

Check c6_bicategories() {
    Check c;
    for (const auto& [name, cat] : generated_suite()) {
        ++c.cases;
        c.expect(same_chi(bicat_euler_char(cat_as_bicat(cat)), euler_char(cat)), name + ": bicategory chi differs");
    }
    const auto b = example_bicat();
    const auto m = bicat_adjacency(b);
    c.expect(m == QMatrix{{q(1), q(2)}, {q(0), q(1, 2)}}, "example adjacency " + m.str());
    // adjugate oracle, no elimination: inverse [[1,-4],[0,2]], entries sum to -1
    const auto hand = oracle::chi_invertible(m);
    c.expect(hand && *hand == q(-1), "oracle chi " + str(hand));
    const auto r = bicat_euler_char(b);
    c.expect(r.exists && *r.value == q(-1), "example chi " + str(r.value));
    c.note = std::to_string(c.cases) + " categories + example bicategory";
    return c;
}

Check c7_internal_equivalence() {
    Check c;
    std::vector<std::pair<std::string, FinBicat>> cases = {
        {"chaotic3", locally_chaotic(chaotic(3))},
        {"three_object", locally_chaotic(three_object())},
        {"no_coweighting", locally_chaotic(no_coweighting())},
        {"three_object/discrete", cat_as_bicat(three_object())},
        {"chaotic2*two_arrow", locally_chaotic(product(chaotic(2), two_arrow()))},
    };
    for (std::uint32_t seed = 101; seed <= 106; ++seed)
        cases.push_back({"preorder" + std::to_string(seed), locally_chaotic(random_preorder(2 + seed % 4, seed))});

    std::size_t with_equivalence = 0, pairs = 0;
    for (const auto& [name, b] : cases) {
        const auto p = internal_equiv_classes(b);
        const std::size_t n = b.zero_cell_count();
        if (p.representatives.size() == n) continue;
        ++with_equivalence;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y) {
                if (p.class_of[x] != p.class_of[y]) continue;
                ++pairs;
                SearchBudget budget;
                const auto w = internal_equivalence(b, x, y, budget);
                c.expect(w.has_value(), name + ": no witness for a class pair");
                if (w) {
                    const bool a_iso = find_isomorphism(b.hom(x, x), b.hcomp1(x, y, x, w->g, w->f), b.unit(x)).has_value();
                    const bool b_iso = find_isomorphism(b.hom(y, y), b.hcomp1(y, x, y, w->f, w->g), b.unit(y)).has_value();
                    c.expect(a_iso && b_iso, name + ": witness 2-cells are not invertible");
                }
                for (std::size_t z = 0; z < n; ++z) {
                    const std::string tag = name + " " + b.zero_cells()[x] + "~" + b.zero_cells()[y] + " via " + b.zero_cells()[z];
                    c.expect(same_chi(euler_char(b.hom(x, z)), euler_char(b.hom(y, z))), tag + ": chi of A(-,z) differs");
                    c.expect(same_chi(euler_char(b.hom(z, x)), euler_char(b.hom(z, y))), tag + ": chi of A(z,-) differs");
                    c.expect(equivalent(b.hom(x, z), b.hom(y, z)), tag + ": A(x,z), A(y,z) not equivalent");
                    c.expect(equivalent(b.hom(z, x), b.hom(z, y)), tag + ": A(z,x), A(z,y) not equivalent");
                }
            }
    }
    c.cases = with_equivalence;
    c.expect(with_equivalence >= 5, "only " + std::to_string(with_equivalence) + " bicategories");
    c.note = std::to_string(with_equivalence) + " bicategories, " + std::to_string(pairs) + " equivalent pairs";
    return c;
}

Check c8_towers() {
    Check c;
    for (const auto& [name, cat] : generated_suite()) {
        ++c.cases;
        c.expect(same_chi(chi_n(category_to_datum(cat)), euler_char(cat)), name + ": level-1 tower");
    }
    std::vector<std::pair<std::string, FinBicat>> bicats = {{"example", example_bicat()},
                                                             {"one_hom(two_arrow)", one_hom_bicat(two_arrow())},
                                                             {"one_hom(Z3)", one_hom_bicat(cyclic_group(3))},
                                                             {"chaotic3", locally_chaotic(chaotic(3))},
                                                             {"three_object", locally_chaotic(three_object())}};
    for (const auto& [name, cat] : base_suite()) bicats.push_back({name + "/discrete", cat_as_bicat(cat)});
    for (const auto& [name, b] : bicats) {
        ++c.cases;
        EulerResult r;
        try {
            r = chi_n(bicat_to_datum(b));
        } catch (const UndefinedEuler&) {
            r.exists = false;
        }
        EulerResult want;
        try {
            want = bicat_euler_char(b);
        } catch (const UndefinedEuler&) {
            want.exists = false;
        }
        c.expect(same_chi(r, want), name + ": level-2 tower");
    }

    // Level 3 by hand. Entries: χ(example) = -1, χ(Z3 as bicategory) = 1/3,
    // nothing from B to A, χ(discrete 2) = 2. Inverse of [[-1, 1/3], [0, 2]]
    // is [[-1, 1/6], [0, 1/2]], entry sum -1/3.
    EulerDatum empty2{2, 0, {}, {}};
    EulerDatum top{3, 0, {"A", "B"},
                   {bicat_to_datum(example_bicat()), bicat_to_datum(cat_as_bicat(cyclic_group(3))), empty2,
                    bicat_to_datum(cat_as_bicat(discrete_category(2)))}};
    ++c.cases;
    try {
        const auto r = chi_n(top);
        c.expect(r.exists && *r.value == q(-1, 3), "level-3 tower chi " + str(r.value));
        const auto oracle_value = oracle::chi_invertible(QMatrix{{q(-1), q(1, 3)}, {q(0), q(2)}});
        c.expect(oracle_value && *oracle_value == q(-1, 3), "level-3 hand value");
    } catch (const std::exception& e) {
        c.expect(false, std::string("level-3 tower threw: ") + e.what());
    }
    return c;
}

Check c9_simplicial() {
    Check c;
    constexpr std::size_t N = 4;
    for (const auto& [name, cat] : generated_suite()) {
        ++c.cases;
        const auto x = nerve(cat, N);
        for (std::size_t n = 0; n <= N; ++n)
            c.expect(x.count(n) == oracle::nerve_count(cat, n), name + ": nerve size at level " + std::to_string(n));
        const auto v = check_sset(x.raw());
        c.expect(v.empty(), name + ": " + (v.empty() ? "" : v.front().kind));
        const auto rep = filler_report(x);
        for (const auto& fc : rep.counts)
            c.expect(fc.unfilled == 0 && fc.multi_filled == 0 && fc.horns == x.count(fc.n),
                     name + ": horn (" + std::to_string(fc.n) + "," + std::to_string(fc.k) + ") not uniquely filled");
        c.expect(rep.counts.size() == 6, name + ": inner horn shapes checked " + std::to_string(rep.counts.size()));
        try {
            const auto back = category_from_nerve(x);
            c.expect(categories_isomorphic(back, cat).has_value(), name + ": reconstruction not isomorphic");
        } catch (const std::exception& e) {
            c.expect(false, name + ": reconstruction threw " + e.what());
        }
        c.expect(same_chi(chi_sset(x), euler_char(cat)), name + ": chi_sset " + str(chi_sset(x).value));
    }

    // mutilated fixtures
    const auto h = horn(2, 1, N);
    const auto hr = filler_report(h);
    c.expect(!hr.quasi_category && !hr.nerve_shaped, "horn fixture passed the filler checks");
    c.expect(!chi_sset(h).exists, "horn fixture got a chi");
    {
        auto r = standard_simplex(2, 2).raw();
        const std::size_t top = *standard_simplex(2, 2).find(2, "012");
        r.simplices[2].push_back("012'");
        for (std::size_t i = 0; i <= 2; ++i) r.faces[2][i].push_back(r.faces[2][i][top]);
        const auto d = validate_sset(r);
        const auto dr = filler_report(d);
        c.expect(dr.quasi_category && !dr.nerve_shaped, "doubled-simplex fixture misclassified");
        c.expect(!chi_sset(d).exists, "doubled-simplex fixture got a chi");
    }
    {
        auto r = nerve(three_object(), 3).raw();
        std::swap(r.faces[2][1][0], r.faces[2][1][1]);
        c.expect(!check_sset(r).empty(), "swapped-face fixture passed the simplicial identities");
    }

    // ⊔ and × on nerve-shaped inputs
    const FinCat small[] = {two_arrow(), cyclic_group(2), three_object(), random_poset(4, 3), klein_four(), chaotic(2)};
    for (const auto& a : small)
        for (const auto& b : small) {
            const auto xa = nerve(a, 3), xb = nerve(b, 3);
            const auto ca = chi_sset(xa), cb = chi_sset(xb);
            const auto s = chi_sset(sset_coproduct(xa, xb));
            const auto p = chi_sset(sset_product(xa, xb));
            c.expect(s.exists && *s.value == *ca.value + *cb.value, "chi_sset of coproduct " + str(s.value));
            c.expect(p.exists && *p.value == *ca.value * *cb.value, "chi_sset of product " + str(p.value));
        }
    c.note = std::to_string(c.cases) + " nerves at dim 4";
    return c;
}

Check c10_solver() {
    Check c;
    const std::int64_t vals[] = {-1, 0, 1, 2};
    const QVector one{1, 1, 1};
    const std::vector<std::int64_t> one_int{1, 1, 1};
    for (std::size_t code = 0; code < 262144; ++code) {
        std::vector<std::vector<std::int64_t>> a(3, std::vector<std::int64_t>(3));
        std::size_t rest = code;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j, rest /= 4) a[i][j] = vals[rest % 4];
        QMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i][j];
        ++c.cases;
        const auto s = solve_affine(m, one);
        const auto o = oracle::affine_int(a, one_int);
        if (s.consistent != o.consistent) {
            c.expect(false, m.str() + ": consistency");
            continue;
        }
        if (!s.consistent) continue;
        c.expect(m * *s.particular == one, m.str() + ": particular does not solve");
        c.expect(s.nullspace_basis.size() == 3 - o.rank, m.str() + ": nullspace dimension");
        for (const auto& v : s.nullspace_basis) c.expect(m * v == QVector(3), m.str() + ": basis vector not in kernel");
        if (o.unique) c.expect(*s.particular == *o.unique, m.str() + ": differs from Cramer");
    }
    c.note = std::to_string(c.cases) + " matrices";
    return c;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Check()>> criteria[] = {
        {"1 example values", c1_values},
        {"2 terminal or initial object gives chi 1", c2_terminal_initial},
        {"3 coproduct sums, product multiplies, Kronecker adjacency", c3_sums_products},
        {"4 skeleton and equivalence invariance", c4_equivalence},
        {"5 constant weightings and nullspace shifts", c5_weighting_lemmas},
        {"6 bicategory agreement and example bicategory", c6_bicategories},
        {"7 internal equivalence preserves hom data", c7_internal_equivalence},
        {"8 recursive chi on towers", c8_towers},
        {"9 nerves, horn fillers, fixtures, chi_sset", c9_simplicial},
        {"10 solver against minors and Cramer", c10_solver},
    };
    int failed = 0;
    for (const auto& [title, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = c.failures.empty();
        failed += !ok;
        std::printf("%s C%s (%s; %.2fs)\n", ok ? "PASS" : "FAIL", title, c.note.empty() ? "exact" : c.note.c_str(), secs);
        for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) std::printf("    %s\n", c.failures[i].c_str());
        if (c.failures.size() > 5) std::printf("    ... %zu more\n", c.failures.size() - 5);
    }
    std::printf("%d of 10 criteria failed\n", failed);
    return failed ? 1 : 0;
}
