#pragma once

// Command-line front end. run() takes the arguments after the program name
// and returns the process exit code:
//   0 computed / valid, 1 invalid structure, 2 result undefined,
//   3 usage, IO or format error.

#include "eulerkit/fincat.hpp"
#include "eulerkit/higher.hpp"
#include "eulerkit/io.hpp"
#include "eulerkit/magnitude.hpp"
#include "eulerkit/simplicial.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace eulerkit::cli {

inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;
inline constexpr int kUndefined = 2;
inline constexpr int kError = 3;

struct Options {
    std::vector<std::string> files;
    bool matrix = false;
    bool witness = false;
    bool unique = false;
    std::size_t dim = 4;
    std::string output;
};

namespace detail {

inline SearchBudget budget_from_env() {
    const char* v = std::getenv("EULERKIT_BUDGET");
    if (!v || !*v) return SearchBudget{};
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (*end != '\0' || v[0] == '-') throw FormatError("EULERKIT_BUDGET must be a non-negative integer");
    return SearchBudget{static_cast<std::uint64_t>(n)};
}

inline FinCat load_category(const std::string& path) { return validate_category(category_from_json(read_json_file(path))); }
inline FinBicat load_bicat(const std::string& path) { return validate_bicat(bicat_from_json(read_json_file(path))); }
inline TruncatedSSet load_sset(const std::string& path) { return validate_sset(sset_from_json(read_json_file(path))); }

inline int emit(const OrderedJson& j, const Options& o, std::ostream& out) {
    if (o.output.empty()) {
        out << j.dump(2) << "\n";
        return kOk;
    }
    std::ofstream f(o.output);
    if (!f) throw FormatError("cannot write '" + o.output + "'");
    f << j.dump(2) << "\n";
    if (!f) throw FormatError("failed writing '" + o.output + "'");
    out << "wrote " << o.output << "\n";
    return kOk;
}

inline void print_witness(const EulerResult& r, std::ostream& out) {
    if (r.weighting) out << "weighting = " << format_vector(r.weighting->values) << "\n";
    if (r.coweighting) out << "coweighting = " << format_vector(r.coweighting->values) << "\n";
}

inline int report_euler(const EulerResult& r, const Options& o, std::ostream& out) {
    if (o.witness) print_witness(r, out);
    if (!r.exists) {
        out << "chi undefined: " << r.reason << "\n";
        return kUndefined;
    }
    out << "chi = " << r.value->str() << "\n";
    return kOk;
}

inline int report_solution(const LinearSolution& s, const char* what, const Options& o, std::ostream& out) {
    if (!s.consistent) {
        out << "no " << what << "\n";
        return kUndefined;
    }
    out << "particular = " << format_vector(*s.particular) << "; nullspace dim = " << s.nullspace_basis.size()
        << "\n";
    if (o.witness)
        for (std::size_t i = 0; i < s.nullspace_basis.size(); ++i)
            out << "basis[" << i << "] = " << format_vector(s.nullspace_basis[i]) << "\n";
    return kOk;
}

inline std::string object_map(const Functor& f, const FinCat& from, const FinCat& to) {
    std::string s;
    for (std::size_t x = 0; x < from.object_count(); ++x)
        s += (x ? ", " : "") + from.object(x) + " -> " + to.object(f.object_map[x]);
    return s;
}

inline int do_validate(const Options& o, std::ostream& out) {
    const Json j = read_json_file(o.files[0]);
    if (j.is_object() && j.contains("zero_cells")) {
        auto b = validate_bicat(bicat_from_json(j));
        out << "valid bicategory: " << b.zero_cell_count() << " 0-cells" << (b.is_strict() ? ", strict" : "") << "\n";
    } else if (j.is_object() && j.contains("level")) {
        auto d = datum_from_json(j);
        out << "valid datum: level " << d.level << ", " << d.cells.size() << " cells\n";
    } else if (j.is_object() && j.contains("dim")) {
        auto x = validate_sset(sset_from_json(j));
        out << "valid simplicial set: dim " << x.dim() << "\n";
    } else {
        auto c = validate_category(category_from_json(j));
        out << "valid category: " << c.object_count() << " objects, " << c.morphism_count() << " morphisms\n";
    }
    return kOk;
}

inline int do_horncheck(const Options& o, std::ostream& out) {
    const auto x = load_sset(o.files[0]);
    const auto r = filler_report(x);
    for (const auto& c : r.counts)
        out << "horn (" << c.n << "," << c.k << "): " << c.horns << " instances, " << c.unfilled << " unfilled, "
            << c.multi_filled << " with several fillers\n";
    out << "quasi-category up to dim " << r.checked_dim << ": " << (r.quasi_category ? "yes" : "no") << "\n";
    out << "nerve-shaped up to dim " << r.checked_dim << ": " << (r.nerve_shaped ? "yes" : "no") << "\n";
    out << "dim " << r.checked_dim + 1 << ": not checked\n";
    const bool pass = o.unique ? r.nerve_shaped : r.quasi_category;
    return pass ? kOk : kUndefined;
}

inline int dispatch(const std::string& verb, const Options& o, std::ostream& out) {
    const auto& f = o.files;
    if (verb == "validate") return do_validate(o, out);
    if (verb == "chi") {
        const auto c = load_category(f[0]);
        if (o.matrix) out << "matrix: " << adjacency(c).matrix.str() << "\n";
        return report_euler(euler_char(c), o, out);
    }
    if (verb == "weighting") return report_solution(weighting_solution(load_category(f[0]), Side::weighting), "weighting", o, out);
    if (verb == "coweighting")
        return report_solution(weighting_solution(load_category(f[0]), Side::coweighting), "coweighting", o, out);
    if (verb == "opposite") return emit(category_to_json(opposite(load_category(f[0]))), o, out);
    if (verb == "skeleton") return emit(category_to_json(skeleton(load_category(f[0]))), o, out);
    if (verb == "product") return emit(category_to_json(product(load_category(f[0]), load_category(f[1]))), o, out);
    if (verb == "coproduct")
        return emit(category_to_json(coproduct(load_category(f[0]), load_category(f[1]))), o, out);
    if (verb == "equivalent") {
        const auto a = load_category(f[0]);
        const auto b = load_category(f[1]);
        auto budget = budget_from_env();
        const auto eq = equivalence_witness(a, b, budget);
        out << "equivalent = " << (eq ? "true" : "false") << "\n";
        if (eq && o.witness) {
            out << "F: " << object_map(eq->forward, a, b) << "\n";
            out << "G: " << object_map(eq->backward, b, a) << "\n";
        }
        return kOk;
    }
    if (verb == "chi-bicat") {
        const auto b = load_bicat(f[0]);
        try {
            const auto m = bicat_adjacency(b);
            if (o.matrix) out << "matrix: " << m.str() << "\n";
            return report_euler(euler_from_matrix(m), o, out);
        } catch (const UndefinedEuler& e) {
            out << "chi undefined: " << e.what() << "\n";
            return kUndefined;
        }
    }
    if (verb == "chi-n") {
        const auto d = datum_from_json(read_json_file(f[0]));
        try {
            return report_euler(chi_n(d), o, out);
        } catch (const UndefinedEuler& e) {
            out << "chi undefined: " << e.what() << "\n";
            return kUndefined;
        }
    }
    if (verb == "internal-classes") {
        const auto b = load_bicat(f[0]);
        auto budget = budget_from_env();
        const auto p = internal_equiv_classes(b, budget);
        out << "classes:";
        for (std::size_t cls = 0; cls < p.representatives.size(); ++cls) {
            out << " {";
            bool first = true;
            for (std::size_t x = 0; x < b.zero_cell_count(); ++x)
                if (p.class_of[x] == cls) {
                    out << (first ? "" : ", ") << b.zero_cells()[x];
                    first = false;
                }
            out << "}";
        }
        out << "\n";
        return kOk;
    }
    if (verb == "nerve") return emit(sset_to_json(nerve(load_category(f[0]), o.dim)), o, out);
    if (verb == "validate-sset") {
        const auto x = load_sset(f[0]);
        out << "valid: dim " << x.dim() << ", simplices per level";
        for (auto c : x.counts()) out << " " << c;
        out << "\n";
        return kOk;
    }
    if (verb == "horncheck") return do_horncheck(o, out);
    if (verb == "chi-sset") {
        const auto x = load_sset(f[0]);
        if (x.dim() < 2) throw FormatError("chi-sset needs a simplicial set of dimension at least 2");
        return report_euler(chi_sset(x), o, out);
    }
    throw FormatError("unknown verb '" + verb + "'");
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Euler characteristics of finite categories and their relatives", "eulerkit"};
    app.require_subcommand(1, 1);
    Options o;

    struct Verb {
        const char* name;
        const char* help;
        int files;
        bool matrix, witness, dim, unique, output;
    };
    const Verb verbs[] = {
        {"validate", "check a category, bicategory, datum or simplicial set", 1, false, false, false, false, false},
        {"chi", "Euler characteristic of a category", 1, true, true, false, false, false},
        {"weighting", "all weightings of a category", 1, false, true, false, false, false},
        {"coweighting", "all coweightings of a category", 1, false, true, false, false, false},
        {"opposite", "opposite category", 1, false, false, false, false, true},
        {"skeleton", "skeleton of a category", 1, false, false, false, false, true},
        {"product", "product of two categories", 2, false, false, false, false, true},
        {"coproduct", "coproduct of two categories", 2, false, false, false, false, true},
        {"equivalent", "decide equivalence of two categories", 2, false, true, false, false, false},
        {"chi-bicat", "Euler characteristic of a bicategory", 1, true, true, false, false, false},
        {"chi-n", "Euler characteristic of a hom-data tower", 1, false, true, false, false, false},
        {"internal-classes", "internal equivalence classes of 0-cells", 1, false, false, false, false, false},
        {"nerve", "truncated nerve of a category", 1, false, false, true, false, true},
        {"validate-sset", "check the simplicial identities", 1, false, false, false, false, false},
        {"horncheck", "inner horn filler report", 1, false, false, false, true, false},
        {"chi-sset", "Euler characteristic on nerve-shaped simplicial sets", 1, false, true, false, false, false},
    };
    for (const auto& v : verbs) {
        auto* sub = app.add_subcommand(v.name, v.help);
        sub->add_option("files", o.files, v.files == 1 ? "input file" : "input files")
            ->required()
            ->expected(v.files);
        if (v.matrix) sub->add_flag("--matrix", o.matrix, "print the adjacency matrix");
        if (v.witness) sub->add_flag("--witness", o.witness, "print supporting data");
        if (v.dim) sub->add_option("--dim", o.dim, "truncation dimension")->check(CLI::Range(1, 16));
        if (v.unique) sub->add_flag("--unique", o.unique, "require unique fillers");
        if (v.output) sub->add_option("-o", o.output, "write JSON here instead of stdout");
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kError;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        return detail::dispatch(verb, o, out);
    } catch (const ValidationError& e) {
        out << "invalid: " << e.violations().size() << " violation(s)\n";
        for (const auto& v : e.violations()) out << "  [" << v.kind << "] " << v.message << "\n";
        return kInvalid;
    } catch (const NotNerveShaped& e) {
        out << "chi undefined: " << e.what() << "\n";
        return kUndefined;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    } catch (const BudgetExhausted& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

}  // namespace eulerkit::cli
