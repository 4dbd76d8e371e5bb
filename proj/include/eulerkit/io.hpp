#pragma once

// JSON reading and writing for categories, bicategories, hom-data towers
// and truncated simplicial sets.

#include "eulerkit/fincat.hpp"
#include "eulerkit/higher.hpp"
#include "eulerkit/simplicial.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eulerkit {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Malformed input: bad JSON, wrong types, unknown keys or names. Distinct
/// from ValidationError, which means well-formed data breaking the axioms.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace io_detail {

inline void allow_keys(const Json& j, std::initializer_list<std::string_view> keys, const std::string& where) {
    if (!j.is_object()) throw FormatError(where + ": expected an object");
    for (const auto& [k, _] : j.items()) {
        bool known = false;
        for (auto a : keys) known = known || k == a;
        if (!known) throw FormatError(where + ": unknown key '" + k + "'");
    }
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(where + ": missing key '" + key + "'");
    return *it;
}

inline std::string str(const Json& j, const std::string& where) {
    if (!j.is_string()) throw FormatError(where + ": expected a string");
    return j.get<std::string>();
}

inline std::vector<std::string> str_list(const Json& j, const std::string& where) {
    if (!j.is_array()) throw FormatError(where + ": expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::size_t count(const Json& j, const std::string& where) {
    const bool ok = j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
    if (!ok) throw FormatError(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

/// Name -> first index carrying it. Later duplicates are left to validation.
inline std::map<std::string, std::size_t> name_index(const std::vector<std::string>& names) {
    std::map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < names.size(); ++i) m.emplace(names[i], i);
    return m;
}

inline std::size_t lookup(const std::map<std::string, std::size_t>& m, const std::string& name, const char* what,
                          const std::string& where) {
    auto it = m.find(name);
    if (it == m.end()) throw FormatError(where + ": unknown " + what + " '" + name + "'");
    return it->second;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

/// "x|y|..." resolved against the 0-cell names.
inline std::vector<std::size_t> cell_tuple(const std::string& key, std::size_t arity,
                                           const std::map<std::string, std::size_t>& cells, const std::string& where) {
    auto parts = split(key, '|');
    if (parts.size() != arity)
        throw FormatError(where + ": key '" + key + "' should name " + std::to_string(arity) + " cells joined by '|'");
    std::vector<std::size_t> out;
    for (const auto& p : parts) out.push_back(lookup(cells, p, "cell", where));
    return out;
}

inline std::size_t parse_index(std::string_view s, const std::string& where) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw FormatError(where + ": '" + std::string(s) + "' is not a non-negative integer");
    return v;
}

inline std::vector<std::string> morphism_names(const RawCategory& c) {
    std::vector<std::string> out;
    for (const auto& m : c.morphisms) out.push_back(m.name);
    return out;
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Files

inline Json parse_json_text(const std::string& text, const std::string& source = "input") {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Categories

inline RawCategory category_from_json(const Json& j, const std::string& where = "category") {
    using namespace io_detail;
    allow_keys(j, {"objects", "morphisms", "identities", "composition"}, where);
    RawCategory raw;
    raw.objects = str_list(field(j, "objects", where), where + ".objects");
    const auto obj = name_index(raw.objects);

    const Json& ms = field(j, "morphisms", where);
    if (!ms.is_array()) throw FormatError(where + ".morphisms: expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string w = where + ".morphisms[" + std::to_string(i) + "]";
        allow_keys(ms[i], {"name", "src", "tgt"}, w);
        raw.morphisms.push_back({str(field(ms[i], "name", w), w + ".name"),
                                 lookup(obj, str(field(ms[i], "src", w), w + ".src"), "object", w),
                                 lookup(obj, str(field(ms[i], "tgt", w), w + ".tgt"), "object", w)});
    }
    const auto mor = name_index(morphism_names(raw));

    raw.identities.assign(raw.objects.size(), std::nullopt);
    if (auto it = j.find("identities"); it != j.end()) {
        const std::string w = where + ".identities";
        if (!it->is_object()) throw FormatError(w + ": expected an object");
        for (const auto& [o, m] : it->items())
            raw.identities[lookup(obj, o, "object", w)] = lookup(mor, str(m, w + "." + o), "morphism", w);
    }

    if (auto it = j.find("composition"); it != j.end()) {
        if (!it->is_array()) throw FormatError(where + ".composition: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string w = where + ".composition[" + std::to_string(i) + "]";
            const Json& e = (*it)[i];
            allow_keys(e, {"first", "then", "equals"}, w);
            raw.composition.push_back({lookup(mor, str(field(e, "first", w), w + ".first"), "morphism", w),
                                       lookup(mor, str(field(e, "then", w), w + ".then"), "morphism", w),
                                       lookup(mor, str(field(e, "equals", w), w + ".equals"), "morphism", w)});
        }
    }
    return raw;
}

inline OrderedJson category_to_json(const FinCat& c) {
    OrderedJson j;
    j["objects"] = c.objects();
    j["morphisms"] = OrderedJson::array();
    for (const auto& m : c.morphisms())
        j["morphisms"].push_back({{"name", m.name}, {"src", c.object(m.src)}, {"tgt", c.object(m.tgt)}});
    j["identities"] = OrderedJson::object();
    for (std::size_t x = 0; x < c.object_count(); ++x) j["identities"][c.object(x)] = c.morphism(c.identity(x)).name;
    j["composition"] = OrderedJson::array();
    for (const auto& e : to_raw(c).composition)
        j["composition"].push_back({{"first", c.morphism(e.first).name},
                                    {"then", c.morphism(e.then).name},
                                    {"equals", c.morphism(e.equals).name}});
    return j;
}

// ---------------------------------------------------------------------------
// Bicategories

/// Omitted hom pairs are empty categories; omitted horizontal composites are
/// left for validation to infer or report; omitted coherence cells are
/// identities.
inline RawBicat bicat_from_json(const Json& j) {
    using namespace io_detail;
    const std::string where = "bicategory";
    allow_keys(j, {"zero_cells", "hom", "hcomp", "units", "associators", "unitors"}, where);
    RawBicat raw;
    raw.zero_cells = str_list(field(j, "zero_cells", where), where + ".zero_cells");
    const std::size_t n = raw.zero_cells.size();
    const auto cells = name_index(raw.zero_cells);

    raw.homs.assign(n * n, RawCategory{});
    if (auto it = j.find("hom"); it != j.end()) {
        if (!it->is_object()) throw FormatError(where + ".hom: expected an object");
        for (const auto& [key, cat] : it->items()) {
            auto xy = cell_tuple(key, 2, cells, where + ".hom");
            raw.homs[xy[0] * n + xy[1]] = category_from_json(cat, "hom[" + key + "]");
        }
    }
    auto ones = [&](std::size_t x, std::size_t y) { return name_index(raw.homs[x * n + y].objects); };
    auto twos = [&](std::size_t x, std::size_t y) { return name_index(morphism_names(raw.homs[x * n + y])); };

    raw.hcomp.assign(n * n * n, HcompTable{});
    if (auto it = j.find("hcomp"); it != j.end()) {
        if (!it->is_object()) throw FormatError(where + ".hcomp: expected an object");
        for (const auto& [key, tab] : it->items()) {
            const std::string w = "hcomp[" + key + "]";
            auto t = cell_tuple(key, 3, cells, w);
            const std::size_t x = t[0], y = t[1], z = t[2];
            const auto& ab = raw.homs[x * n + y];
            const auto& bc = raw.homs[y * n + z];
            auto& out = raw.hcomp[(x * n + y) * n + z];
            out.one_cells.assign(bc.objects.size() * ab.objects.size(), npos);
            out.two_cells.assign(bc.morphisms.size() * ab.morphisms.size(), npos);
            allow_keys(tab, {"one_cells", "two_cells"}, w);
            const auto o_ab = ones(x, y), o_bc = ones(y, z), o_ac = ones(x, z);
            const auto t_ab = twos(x, y), t_bc = twos(y, z), t_ac = twos(x, z);
            if (auto oc = tab.find("one_cells"); oc != tab.end()) {
                if (!oc->is_array()) throw FormatError(w + ".one_cells: expected an array");
                for (std::size_t i = 0; i < oc->size(); ++i) {
                    const std::string we = w + ".one_cells[" + std::to_string(i) + "]";
                    const Json& e = (*oc)[i];
                    allow_keys(e, {"g", "f", "equals"}, we);
                    const auto g = lookup(o_bc, str(field(e, "g", we), we), "1-cell", we);
                    const auto f = lookup(o_ab, str(field(e, "f", we), we), "1-cell", we);
                    out.one_cells[g * ab.objects.size() + f] = lookup(o_ac, str(field(e, "equals", we), we), "1-cell", we);
                }
            }
            if (auto tc = tab.find("two_cells"); tc != tab.end()) {
                if (!tc->is_array()) throw FormatError(w + ".two_cells: expected an array");
                for (std::size_t i = 0; i < tc->size(); ++i) {
                    const std::string we = w + ".two_cells[" + std::to_string(i) + "]";
                    const Json& e = (*tc)[i];
                    allow_keys(e, {"beta", "alpha", "equals"}, we);
                    const auto b = lookup(t_bc, str(field(e, "beta", we), we), "2-cell", we);
                    const auto a = lookup(t_ab, str(field(e, "alpha", we), we), "2-cell", we);
                    out.two_cells[b * ab.morphisms.size() + a] =
                        lookup(t_ac, str(field(e, "equals", we), we), "2-cell", we);
                }
            }
        }
    }

    raw.units.assign(n, std::nullopt);
    if (auto it = j.find("units"); it != j.end()) {
        const std::string w = where + ".units";
        if (!it->is_object()) throw FormatError(w + ": expected an object");
        for (const auto& [c, u] : it->items()) {
            const auto x = lookup(cells, c, "cell", w);
            raw.units[x] = lookup(ones(x, x), str(u, w + "." + c), "1-cell", w);
        }
    }

    if (auto it = j.find("associators"); it != j.end()) {
        if (!it->is_object()) throw FormatError(where + ".associators: expected an object");
        for (const auto& [key, list] : it->items()) {
            const std::string w = "associators[" + key + "]";
            auto t = cell_tuple(key, 4, cells, w);
            const std::size_t x = t[0], y = t[1], z = t[2], wc = t[3];
            if (!list.is_array()) throw FormatError(w + ": expected an array");
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string we = w + "[" + std::to_string(i) + "]";
                allow_keys(list[i], {"h", "g", "f", "cell"}, we);
                const auto h = lookup(ones(z, wc), str(field(list[i], "h", we), we), "1-cell", we);
                const auto g = lookup(ones(y, z), str(field(list[i], "g", we), we), "1-cell", we);
                const auto f = lookup(ones(x, y), str(field(list[i], "f", we), we), "1-cell", we);
                raw.associators[{x, y, z, wc, h, g, f}] =
                    lookup(twos(x, wc), str(field(list[i], "cell", we), we), "2-cell", we);
            }
        }
    }

    if (auto it = j.find("unitors"); it != j.end()) {
        if (!it->is_object()) throw FormatError(where + ".unitors: expected an object");
        for (const auto& [key, list] : it->items()) {
            const std::string w = "unitors[" + key + "]";
            auto t = cell_tuple(key, 2, cells, w);
            const std::size_t x = t[0], y = t[1];
            if (!list.is_array()) throw FormatError(w + ": expected an array");
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string we = w + "[" + std::to_string(i) + "]";
                allow_keys(list[i], {"f", "left", "right"}, we);
                const auto f = lookup(ones(x, y), str(field(list[i], "f", we), we), "1-cell", we);
                if (auto l = list[i].find("left"); l != list[i].end())
                    raw.left_unitors[{x, y, f}] = lookup(twos(x, y), str(*l, we + ".left"), "2-cell", we);
                if (auto r = list[i].find("right"); r != list[i].end())
                    raw.right_unitors[{x, y, f}] = lookup(twos(x, y), str(*r, we + ".right"), "2-cell", we);
            }
        }
    }
    return raw;
}

/// Writes every hom and composite; coherence cells only where they are not
/// identities.
inline OrderedJson bicat_to_json(const FinBicat& b) {
    const std::size_t n = b.zero_cell_count();
    const auto& zc = b.zero_cells();
    auto key = [&](std::initializer_list<std::size_t> ids) {
        std::string k;
        for (auto i : ids) k += (k.empty() ? "" : "|") + zc[i];
        return k;
    };
    OrderedJson j;
    j["zero_cells"] = zc;
    j["hom"] = OrderedJson::object();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) j["hom"][key({x, y})] = category_to_json(b.hom(x, y));
    j["hcomp"] = OrderedJson::object();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const FinCat& ab = b.hom(x, y);
                const FinCat& bc = b.hom(y, z);
                const FinCat& ac = b.hom(x, z);
                OrderedJson t;
                t["one_cells"] = OrderedJson::array();
                for (std::size_t g = 0; g < bc.object_count(); ++g)
                    for (std::size_t f = 0; f < ab.object_count(); ++f)
                        t["one_cells"].push_back(
                            {{"g", bc.object(g)}, {"f", ab.object(f)}, {"equals", ac.object(b.hcomp1(x, y, z, g, f))}});
                t["two_cells"] = OrderedJson::array();
                for (std::size_t be = 0; be < bc.morphism_count(); ++be)
                    for (std::size_t al = 0; al < ab.morphism_count(); ++al)
                        t["two_cells"].push_back({{"beta", bc.morphism(be).name},
                                                  {"alpha", ab.morphism(al).name},
                                                  {"equals", ac.morphism(b.hcomp2(x, y, z, be, al)).name}});
                j["hcomp"][key({x, y, z})] = std::move(t);
            }
    j["units"] = OrderedJson::object();
    for (std::size_t x = 0; x < n; ++x) j["units"][zc[x]] = b.hom(x, x).object(b.unit(x));

    const RawBicat raw = to_raw(b);
    OrderedJson assoc = OrderedJson::object();
    for (const auto& [k, cell] : raw.associators) {
        const FinCat& xw = b.hom(k[0], k[3]);
        if (xw.is_identity(cell)) continue;
        assoc[key({k[0], k[1], k[2], k[3]})].push_back({{"h", b.hom(k[2], k[3]).object(k[4])},
                                                        {"g", b.hom(k[1], k[2]).object(k[5])},
                                                        {"f", b.hom(k[0], k[1]).object(k[6])},
                                                        {"cell", xw.morphism(cell).name}});
    }
    if (!assoc.empty()) j["associators"] = std::move(assoc);

    std::map<UnitorKey, std::pair<std::size_t, std::size_t>> un;
    for (const auto& [k, c] : raw.left_unitors)
        if (!b.hom(k[0], k[1]).is_identity(c)) un.try_emplace(k, npos, npos).first->second.first = c;
    for (const auto& [k, c] : raw.right_unitors)
        if (!b.hom(k[0], k[1]).is_identity(c)) un.try_emplace(k, npos, npos).first->second.second = c;
    if (!un.empty()) {
        OrderedJson u = OrderedJson::object();
        for (const auto& [k, lr] : un) {
            const FinCat& h = b.hom(k[0], k[1]);
            OrderedJson e{{"f", h.object(k[2])}};
            if (lr.first != npos) e["left"] = h.morphism(lr.first).name;
            if (lr.second != npos) e["right"] = h.morphism(lr.second).name;
            u[key({k[0], k[1]})].push_back(std::move(e));
        }
        j["unitors"] = std::move(u);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Hom-data towers

/// An omitted pair in "hom" stands for an empty datum one level down.
inline EulerDatum datum_from_json(const Json& j, const std::string& where = "datum") {
    using namespace io_detail;
    if (!j.is_object()) throw FormatError(where + ": expected an object");
    const std::size_t level = count(field(j, "level", where), where + ".level");
    EulerDatum d;
    d.level = level;
    if (level == 0) {
        allow_keys(j, {"level", "size"}, where);
        d.size = count(field(j, "size", where), where + ".size");
        return d;
    }
    allow_keys(j, {"level", "cells", "hom"}, where);
    d.cells = str_list(field(j, "cells", where), where + ".cells");
    const std::size_t n = d.cells.size();
    const auto cells = name_index(d.cells);
    if (cells.size() != n) throw FormatError(where + ".cells: duplicate cell name");
    EulerDatum empty;
    empty.level = level - 1;
    d.hom.assign(n * n, empty);
    if (auto it = j.find("hom"); it != j.end()) {
        if (!it->is_object()) throw FormatError(where + ".hom: expected an object");
        for (const auto& [key, sub] : it->items()) {
            auto xy = cell_tuple(key, 2, cells, where + ".hom");
            d.hom[xy[0] * n + xy[1]] = datum_from_json(sub, where + "/(" + key + ")");
        }
    }
    try {
        check_datum(d, where);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return d;
}

inline OrderedJson datum_to_json(const EulerDatum& d) {
    OrderedJson j;
    j["level"] = d.level;
    if (d.level == 0) {
        j["size"] = d.size;
        return j;
    }
    j["cells"] = d.cells;
    j["hom"] = OrderedJson::object();
    for (std::size_t x = 0; x < d.cells.size(); ++x)
        for (std::size_t y = 0; y < d.cells.size(); ++y)
            j["hom"][d.cells[x] + "|" + d.cells[y]] = datum_to_json(d.at(x, y));
    return j;
}

// ---------------------------------------------------------------------------
// Truncated simplicial sets

/// Missing levels are empty; missing face or degeneracy entries are left
/// for validation to report.
inline RawSSet sset_from_json(const Json& j) {
    using namespace io_detail;
    const std::string where = "sset";
    allow_keys(j, {"dim", "simplices", "faces", "degeneracies"}, where);
    const std::size_t dim = count(field(j, "dim", where), where + ".dim");
    if (dim > 64) throw FormatError(where + ".dim: unreasonably large");

    std::vector<std::vector<std::string>> levels(dim + 1);
    const Json& sj = field(j, "simplices", where);
    if (!sj.is_object()) throw FormatError(where + ".simplices: expected an object");
    for (const auto& [k, ids] : sj.items()) {
        const auto n = parse_index(k, where + ".simplices");
        if (n > dim) throw FormatError(where + ".simplices: level " + k + " exceeds dim");
        levels[n] = str_list(ids, where + ".simplices." + k);
    }
    std::vector<std::size_t> counts;
    for (const auto& l : levels) counts.push_back(l.size());
    RawSSet raw = detail::empty_tables(dim, counts);
    raw.simplices = levels;
    std::vector<std::map<std::string, std::size_t>> index;
    for (const auto& l : levels) index.push_back(name_index(l));

    auto read_maps = [&](const char* key, bool faces) {
        auto it = j.find(key);
        if (it == j.end()) return;
        const std::string w = where + "." + key;
        if (!it->is_object()) throw FormatError(w + ": expected an object");
        for (const auto& [k, m] : it->items()) {
            auto parts = split(k, ',');
            if (parts.size() != 2) throw FormatError(w + ": key '" + k + "' should be \"n,i\"");
            const auto n = parse_index(parts[0], w);
            const auto i = parse_index(parts[1], w);
            const bool in_range = faces ? (n >= 1 && n <= dim && i <= n) : (n < dim && i <= n);
            if (!in_range) throw FormatError(w + ": map '" + k + "' is outside the truncation");
            const std::size_t to = faces ? n - 1 : n + 1;
            auto& table = faces ? raw.faces[n][i] : raw.degeneracies[n][i];
            if (!m.is_object()) throw FormatError(w + "." + k + ": expected an object");
            for (const auto& [s, t] : m.items())
                table[lookup(index[n], s, "simplex", w + "." + k)] =
                    lookup(index[to], str(t, w + "." + k + "." + s), "simplex", w + "." + k);
        }
    };
    read_maps("faces", true);
    read_maps("degeneracies", false);
    return raw;
}

inline OrderedJson sset_to_json(const TruncatedSSet& x) {
    OrderedJson j;
    j["dim"] = x.dim();
    j["simplices"] = OrderedJson::object();
    for (std::size_t n = 0; n <= x.dim(); ++n) j["simplices"][std::to_string(n)] = x.simplices(n);
    j["faces"] = OrderedJson::object();
    for (std::size_t n = 1; n <= x.dim(); ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            OrderedJson m = OrderedJson::object();
            for (std::size_t s = 0; s < x.count(n); ++s) m[x.id(n, s)] = x.id(n - 1, x.face(n, i, s));
            j["faces"][std::to_string(n) + "," + std::to_string(i)] = std::move(m);
        }
    j["degeneracies"] = OrderedJson::object();
    for (std::size_t n = 0; n < x.dim(); ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            OrderedJson m = OrderedJson::object();
            for (std::size_t s = 0; s < x.count(n); ++s) m[x.id(n, s)] = x.id(n + 1, x.degeneracy(n, i, s));
            j["degeneracies"][std::to_string(n) + "," + std::to_string(i)] = std::move(m);
        }
    return j;
}

}  // namespace eulerkit
