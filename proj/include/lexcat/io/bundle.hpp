#pragma once

#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lexcat/groupoids/simplicial.hpp"
#include "lexcat/kernel/finposet.hpp"
#include "lexcat/kernel/finset.hpp"
#include "lexcat/kernel/tabulated.hpp"
#include "lexcat/presheaves/psh.hpp"
#include "lexcat/sums/sums.hpp"

namespace lexcat::io {

using Json = nlohmann::json;
using SumsTab = Sums<Tabulated>;

/// A finite set with element labels; element k is labels[k].
struct LabelledSet {
  std::vector<std::string> labels;
  [[nodiscard]] FinSet::Object object() const { return FinSet::set(labels.size()); }
};

struct GroupoidEntry {
  std::string carrier;  // "finset" or a category name
  std::optional<TruncatedSimplicial<FinSet>> over_sets;
  std::optional<TruncatedSimplicial<SumsTab>> over_sums;
  Json kan;  // stored witnesses, null when absent
};

struct PresheafEntry {
  std::string category;
  Presheaf presheaf;
  std::vector<std::vector<std::string>> labels;  // per object
};

struct RelationEntry {
  std::string set;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

struct GridEntry {
  std::string category;
  std::vector<std::string> objects;
};

/// A resolved instance bundle: every reference has been looked up.
struct Bundle {
  Json document;
  std::map<std::string, Tabulated> categories;
  std::map<std::string, LabelledSet> sets;
  std::map<std::string, FinSet::Morphism> functions;
  std::map<std::string, std::pair<std::string, SumsTab::Object>> sum_objects;  // category, object
  std::map<std::string, std::pair<std::string, SumsTab::Morphism>> sum_morphisms;
  std::map<std::string, GroupoidEntry> groupoids;
  std::map<std::string, PresheafEntry> presheaves;
  std::map<std::string, RelationEntry> relations;
  std::map<std::string, GridEntry> grids;

  [[nodiscard]] const Tabulated& category(const std::string& name) const {
    const auto it = categories.find(name);
    if (it == categories.end()) throw Error(ErrorCode::malformed, "unknown category '" + name + "'");
    return it->second;
  }
};

namespace detail {

inline std::string where(const std::string& path, const std::string& msg) { return path + ": " + msg; }

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& key, const std::string& kind,
                                       const std::string& path) {
  const auto it = m.find(key);
  if (it == m.end()) throw Error(ErrorCode::malformed, where(path, "unknown " + kind + " '" + key + "'"));
  return it->second;
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::malformed, where(path, "missing field '" + key + "'"));
  return j.at(key);
}

inline std::string text(const Json& j, const std::string& key, const std::string& path) {
  const auto& v = field(j, key, path);
  if (!v.is_string()) throw Error(ErrorCode::malformed, where(path + "." + key, "expected a string"));
  return v.get<std::string>();
}

inline std::uint32_t label_index(const std::vector<std::string>& labels, const std::string& l, const std::string& path) {
  for (std::uint32_t k = 0; k < labels.size(); ++k)
    if (labels[k] == l) return k;
  throw Error(ErrorCode::malformed, where(path, "unknown element '" + l + "'"));
}

inline std::vector<std::string> string_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorCode::malformed, where(path, "expected a list"));
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorCode::malformed, where(path, "expected string entries"));
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline Tabulated builtin_category(const Json& j, const std::string& path) {
  const auto kind = text(j, "builtin", path);
  const auto n = j.contains("n") ? j.at("n").get<std::size_t>() : 3;
  if (kind == "terminal") return tabulate::terminal_category();
  if (kind == "chain") return tabulate::poset(FinPoset::chain(n), "chain" + std::to_string(n));
  if (kind == "discrete") return tabulate::discrete(n);
  if (kind == "z2") return tabulate::z2_monoid();
  if (kind == "pointed-sets") return tabulate::pointed_sets(n);
  throw Error(ErrorCode::malformed, where(path, "unknown builtin '" + kind + "'"));
}

inline Tabulated load_category(const Json& j, const std::string& name, const std::string& path) {
  if (j.contains("builtin")) return builtin_category(j, path);
  TableSpec t;
  t.objects = string_list(field(j, "objects", path), path + ".objects");
  const auto& ms = field(j, "morphisms", path);
  if (!ms.is_array()) throw Error(ErrorCode::malformed, where(path + ".morphisms", "expected a list"));
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto p = path + ".morphisms[" + std::to_string(k) + "]";
    t.morphisms.push_back({text(ms[k], "id", p), text(ms[k], "src", p), text(ms[k], "tgt", p)});
  }
  for (const auto& [obj, mor] : field(j, "identities", path).items()) t.identities[obj] = mor.get<std::string>();
  const auto& cs = field(j, "compose", path);
  if (!cs.is_array()) throw Error(ErrorCode::malformed, where(path + ".compose", "expected a list"));
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const auto p = path + ".compose[" + std::to_string(k) + "]";
    t.compose.push_back({text(cs[k], "g", p), text(cs[k], "f", p), text(cs[k], "result", p)});
  }
  try {
    return Tabulated(t, name);
  } catch (const Error& e) {
    throw Error(e.code(), where(path, e.what()));
  }
}

inline SumsTab::Morphism inline_sum_morphism(const Tabulated& c, const Json& j, const SumsTab::Object& src,
                                             const SumsTab::Object& tgt, const std::string& path) {
  SumsTab::Morphism m{{}, {}, src, tgt};
  const auto& idx = field(j, "index", path);
  const auto& comp = field(j, "components", path);
  if (!idx.is_array() || !comp.is_array() || idx.size() != src.size() || comp.size() != src.size())
    throw Error(ErrorCode::malformed, where(path, "index and components must list one entry per source index"));
  for (std::size_t k = 0; k < src.size(); ++k) {
    m.index.push_back(idx[k].get<std::uint32_t>());
    if (m.index.back() >= tgt.size()) throw Error(ErrorCode::malformed, where(path, "index out of range"));
    try {
      m.components.push_back(c.morphism(comp[k].get<std::string>()));
    } catch (const Error& e) {
      throw Error(ErrorCode::malformed, where(path, e.what()));
    }
  }
  return m;
}

}  // namespace detail

/// Parses and resolves a bundle.  Every failure is E_MALFORMED with a
/// dotted field path (or line and column for syntax errors).
inline Bundle parse_bundle(const std::string& content) {
  using namespace detail;
  Bundle b;
  try {
    b.document = Json::parse(content);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < content.size(); ++k) {
      if (content[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::malformed, "parse error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  const auto& d = b.document;
  if (!d.is_object()) throw Error(ErrorCode::malformed, "bundle: expected an object at top level");
  try {
    if (d.contains("categories"))
      for (const auto& [name, j] : d.at("categories").items())
        b.categories.emplace(name, load_category(j, name, "categories." + name));
    if (d.contains("sets"))
      for (const auto& [name, j] : d.at("sets").items()) b.sets[name] = {string_list(j, "sets." + name)};
    if (d.contains("functions"))
      for (const auto& [name, j] : d.at("functions").items()) {
        const auto p = "functions." + name;
        const auto& src = lookup(b.sets, text(j, "src", p), "set", p + ".src");
        const auto& tgt = lookup(b.sets, text(j, "tgt", p), "set", p + ".tgt");
        const auto& map = field(j, "map", p);
        std::vector<std::uint32_t> table;
        for (const auto& x : src.labels) {
          if (!map.contains(x)) throw Error(ErrorCode::malformed, where(p + ".map", "no image for '" + x + "'"));
          table.push_back(label_index(tgt.labels, map.at(x).get<std::string>(), p + ".map." + x));
        }
        b.functions[name] = FinSet::function(tgt.labels.size(), table);
      }
    // sum-objects keep their declared index order
    std::map<std::string, std::vector<std::string>> sum_indices;
    if (d.contains("sum-objects"))
      for (const auto& [name, j] : d.at("sum-objects").items()) {
        const auto p = "sum-objects." + name;
        const auto cat = text(j, "category", p);
        const auto& c = lookup(b.categories, cat, "category", p + ".category");
        auto indices = string_list(field(j, "indices", p), p + ".indices");
        SumsTab::Object x;
        const auto& fam = field(j, "family", p);
        for (const auto& i : indices) {
          if (!fam.contains(i)) throw Error(ErrorCode::malformed, where(p + ".family", "no object for index '" + i + "'"));
          try {
            x.family.push_back(c.object(fam.at(i).get<std::string>()));
          } catch (const Error& e) {
            throw Error(ErrorCode::malformed, where(p + ".family." + i, e.what()));
          }
        }
        b.sum_objects[name] = {cat, x};
        sum_indices[name] = std::move(indices);
      }
    if (d.contains("sum-morphisms"))
      for (const auto& [name, j] : d.at("sum-morphisms").items()) {
        const auto p = "sum-morphisms." + name;
        const auto src_name = text(j, "src", p), tgt_name = text(j, "tgt", p);
        const auto& [cs, src] = lookup(b.sum_objects, src_name, "sum-object", p + ".src");
        const auto& [ct, tgt] = lookup(b.sum_objects, tgt_name, "sum-object", p + ".tgt");
        if (cs != ct) throw Error(ErrorCode::malformed, where(p, "source and target live over different categories"));
        const auto& c = b.category(cs);
        SumsTab::Morphism m{{}, {}, src, tgt};
        const auto& idx = field(j, "index", p);
        const auto& comp = field(j, "components", p);
        for (const auto& i : sum_indices[src_name]) {
          if (!idx.contains(i) || !comp.contains(i))
            throw Error(ErrorCode::malformed, where(p, "index '" + i + "' is not mapped"));
          m.index.push_back(label_index(sum_indices[tgt_name], idx.at(i).get<std::string>(), p + ".index." + i));
          try {
            m.components.push_back(c.morphism(comp.at(i).get<std::string>()));
          } catch (const Error& e) {
            throw Error(ErrorCode::malformed, where(p + ".components." + i, e.what()));
          }
        }
        b.sum_morphisms[name] = {cs, m};
      }
    if (d.contains("groupoids"))
      for (const auto& [name, j] : d.at("groupoids").items()) {
        const auto p = "groupoids." + name;
        GroupoidEntry g;
        g.carrier = text(j, "carrier", p);
        if (j.contains("kan")) g.kan = j.at("kan");
        if (g.carrier == "finset") {
          auto set = [&](const char* k) { return lookup(b.sets, text(j, k, p), "set", p + "." + k).object(); };
          auto fn = [&](const char* k) { return lookup(b.functions, text(j, k, p), "function", p + "." + k); };
          g.over_sets = TruncatedSimplicial<FinSet>{set("A0"), set("A1"), fn("d0"), fn("d1"), fn("s")};
        } else {
          lookup(b.categories, g.carrier, "category", p + ".carrier");
          auto obj = [&](const char* k) {
            const auto& [cat, x] = lookup(b.sum_objects, text(j, k, p), "sum-object", p + "." + k);
            if (cat != g.carrier) throw Error(ErrorCode::malformed, where(p + "." + k, "lives over another category"));
            return x;
          };
          auto mor = [&](const char* k) {
            const auto& [cat, f] = lookup(b.sum_morphisms, text(j, k, p), "sum-morphism", p + "." + k);
            if (cat != g.carrier) throw Error(ErrorCode::malformed, where(p + "." + k, "lives over another category"));
            return f;
          };
          g.over_sums = TruncatedSimplicial<SumsTab>{obj("A0"), obj("A1"), mor("d0"), mor("d1"), mor("s")};
        }
        b.groupoids[name] = std::move(g);
      }
    if (d.contains("relations"))
      for (const auto& [name, j] : d.at("relations").items()) {
        const auto p = "relations." + name;
        RelationEntry r{text(j, "set", p), {}};
        const auto& labels = lookup(b.sets, r.set, "set", p + ".set").labels;
        for (const auto& pr : field(j, "pairs", p)) {
          if (!pr.is_array() || pr.size() != 2) throw Error(ErrorCode::malformed, where(p + ".pairs", "expected pairs"));
          r.pairs.emplace_back(label_index(labels, pr[0].get<std::string>(), p + ".pairs"),
                               label_index(labels, pr[1].get<std::string>(), p + ".pairs"));
        }
        b.relations[name] = std::move(r);
      }
    if (d.contains("presheaves"))
      for (const auto& [name, j] : d.at("presheaves").items()) {
        const auto p = "presheaves." + name;
        PresheafEntry e{text(j, "category", p), {}, {}};
        const auto& c = lookup(b.categories, e.category, "category", p + ".category");
        const auto& vals = field(j, "values", p);
        for (const auto& x : c.objects()) {
          e.labels.push_back(vals.contains(c.id(x)) ? string_list(vals.at(c.id(x)), p + ".values." + c.id(x))
                                                    : std::vector<std::string>{});
          e.presheaf.values.push_back(static_cast<std::uint32_t>(e.labels.back().size()));
        }
        const Json none = Json::object();
        const auto& acts = j.contains("actions") ? j.at("actions") : none;
        for (const auto& m : c.morphisms()) {
          const auto& from = e.labels[c.tgt(m).index];
          const auto& to = e.labels[c.src(m).index];
          std::vector<std::uint32_t> t;
          if (!acts.contains(c.id(m))) {
            if (!(c.identity(c.src(m)) == m))
              throw Error(ErrorCode::malformed, where(p + ".actions", "no action for morphism '" + c.id(m) + "'"));
            for (std::uint32_t k = 0; k < from.size(); ++k) t.push_back(k);
          } else {
            const auto& a = acts.at(c.id(m));
            for (const auto& x : from) {
              if (!a.contains(x))
                throw Error(ErrorCode::malformed, where(p + ".actions." + c.id(m), "no image for '" + x + "'"));
              t.push_back(label_index(to, a.at(x).get<std::string>(), p + ".actions." + c.id(m) + "." + x));
            }
          }
          e.presheaf.actions.push_back(std::move(t));
        }
        b.presheaves[name] = std::move(e);
      }
    if (d.contains("grids"))
      for (const auto& [name, j] : d.at("grids").items()) {
        const auto p = "grids." + name;
        GridEntry g{text(j, "category", p), string_list(field(j, "objects", p), p + ".objects")};
        const auto& c = lookup(b.categories, g.category, "category", p + ".category");
        for (const auto& o : g.objects) try {
            (void)c.object(o);
          } catch (const Error& e) {
            throw Error(ErrorCode::malformed, where(p, e.what()));
          }
        b.grids[name] = std::move(g);
      }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::malformed, std::string("bundle: ") + e.what());
  }
  return b;
}

inline Bundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::malformed, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bundle(ss.str());
}

// ---- witnesses ----

inline Json to_json(const FinSet::Morphism& f) { return Json{{"table", f.table}, {"tgt", f.tgt}}; }

inline Json to_json(const Tabulated& c, const SumsTab::Morphism& f) {
  Json comps = Json::array();
  for (const auto& m : f.components) comps.push_back(c.id(m));
  return Json{{"index", f.index}, {"components", comps}};
}

template <class C>
Json kan_to_json(const C& c, const KanWitness<C>& w) {
  Json out;
  for (int i = 0; i < 3; ++i) {
    if constexpr (std::is_same_v<C, FinSet>)
      out["s" + std::to_string(i)] = to_json(w.sections[i]);
    else
      out["s" + std::to_string(i)] = to_json(c.base(), w.sections[i]);
  }
  return out;
}

/// Stored sections read back against the recomputed horn objects.
template <class C>
KanWitness<C> kan_from_json(const C& c, const TruncatedSimplicial<C>& a, const Json& j, const std::string& path) {
  const auto data = horn_data(c, a);
  KanWitness<C> w;
  for (int i = 0; i < 3; ++i) {
    const auto p = path + ".s" + std::to_string(i);
    const auto& s = detail::field(j, "s" + std::to_string(i), path);
    if constexpr (std::is_same_v<C, FinSet>) {
      const auto table = detail::field(s, "table", p).template get<std::vector<std::uint32_t>>();
      const auto tgt = data.triangle.object().size;
      for (auto v : table)
        if (v >= tgt) throw Error(ErrorCode::malformed, detail::where(p, "value out of range"));
      w.sections[i] = FinSet::Morphism{table.size(), tgt, table};
    } else {
      w.sections[i] = detail::inline_sum_morphism(c.base(), s, data.horns[i]->object(), data.triangle.object(), p);
    }
  }
  return w;
}

// ---- writing ----

/// Adds a finite set with labels "0".."n-1".
inline std::string put_set(Json& doc, const std::string& name, std::size_t n) {
  Json labels = Json::array();
  for (std::size_t k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  doc["sets"][name] = labels;
  return name;
}

/// Element labels of a set already in the document.
inline std::vector<std::string> labels_in(const Json& doc, const std::string& set) {
  return doc.at("sets").at(set).get<std::vector<std::string>>();
}

inline std::string put_function(Json& doc, const std::string& name, const std::string& src, const std::string& tgt,
                                const FinSet::Morphism& f) {
  const auto from = labels_in(doc, src), to = labels_in(doc, tgt);
  Json map = Json::object();
  for (std::size_t k = 0; k < f.src; ++k) map[from[k]] = to[f.table[k]];
  doc["functions"][name] = Json{{"src", src}, {"tgt", tgt}, {"map", map}};
  return name;
}

inline std::string put_sum_object(Json& doc, const Tabulated& c, const std::string& category, const std::string& name,
                                  const SumsTab::Object& x) {
  Json idx = Json::array(), fam = Json::object();
  for (std::size_t k = 0; k < x.size(); ++k) {
    idx.push_back(std::to_string(k));
    fam[std::to_string(k)] = c.id(x.family[k]);
  }
  doc["sum-objects"][name] = Json{{"category", category}, {"indices", idx}, {"family", fam}};
  return name;
}

inline std::string put_sum_morphism(Json& doc, const Tabulated& c, const std::string& name, const std::string& src,
                                    const std::string& tgt, const SumsTab::Morphism& f) {
  const auto from = doc.at("sum-objects").at(src).at("indices").get<std::vector<std::string>>();
  const auto to = doc.at("sum-objects").at(tgt).at("indices").get<std::vector<std::string>>();
  Json idx = Json::object(), comps = Json::object();
  for (std::size_t k = 0; k < f.index.size(); ++k) {
    idx[from[k]] = to[f.index[k]];
    comps[from[k]] = c.id(f.components[k]);
  }
  doc["sum-morphisms"][name] = Json{{"src", src}, {"tgt", tgt}, {"index", idx}, {"components", comps}};
  return name;
}

inline void put_groupoid(Json& doc, const std::string& name, const TruncatedSimplicial<FinSet>& a,
                         const std::optional<KanWitness<FinSet>>& kan) {
  const FinSet s;
  const auto a0 = put_set(doc, name + ".A0", a.a0.size), a1 = put_set(doc, name + ".A1", a.a1.size);
  Json g{{"carrier", "finset"},
         {"A0", a0},
         {"A1", a1},
         {"d0", put_function(doc, name + ".d0", a1, a0, a.d0)},
         {"d1", put_function(doc, name + ".d1", a1, a0, a.d1)},
         {"s", put_function(doc, name + ".s", a0, a1, a.s)}};
  if (kan) g["kan"] = kan_to_json(s, *kan);
  doc["groupoids"][name] = g;
}

inline void put_groupoid(Json& doc, const SumsTab& s, const std::string& category, const std::string& name,
                         const TruncatedSimplicial<SumsTab>& a, const std::optional<KanWitness<SumsTab>>& kan) {
  const auto& c = s.base();
  const auto a0 = put_sum_object(doc, c, category, name + ".A0", a.a0);
  const auto a1 = put_sum_object(doc, c, category, name + ".A1", a.a1);
  Json g{{"carrier", category},
         {"A0", a0},
         {"A1", a1},
         {"d0", put_sum_morphism(doc, c, name + ".d0", a1, a0, a.d0)},
         {"d1", put_sum_morphism(doc, c, name + ".d1", a1, a0, a.d1)},
         {"s", put_sum_morphism(doc, c, name + ".s", a0, a1, a.s)}};
  if (kan) g["kan"] = kan_to_json(s, *kan);
  doc["groupoids"][name] = g;
}

inline void put_presheaf(Json& doc, const Tabulated& c, const std::string& category, const std::string& name,
                         const Presheaf& f) {
  Json values = Json::object(), actions = Json::object();
  for (const auto& x : c.objects()) {
    Json elems = Json::array();
    for (std::uint32_t k = 0; k < f.values[x.index]; ++k) elems.push_back(std::to_string(k));
    values[c.id(x)] = elems;
  }
  for (const auto& m : c.morphisms()) {
    Json a = Json::object();
    for (std::size_t k = 0; k < f.actions[m.index].size(); ++k) a[std::to_string(k)] = std::to_string(f.actions[m.index][k]);
    actions[c.id(m)] = a;
  }
  doc["presheaves"][name] = Json{{"category", category}, {"values", values}, {"actions", actions}};
}

// ---- checking ----

struct CheckReport {
  std::vector<std::string> lines;       // one per verified item
  std::vector<std::string> violations;  // one per violation
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

namespace detail {

template <class C>
void check_groupoid(const C& c, const std::string& name, const TruncatedSimplicial<C>& a, const Json& kan,
                    CheckReport& rep) {
  const auto p = "groupoids." + name;
  const auto typed = [&](const Mor<C>& f, const Obj<C>& s, const Obj<C>& t) { return c.src(f) == s && c.tgt(f) == t; };
  if (!typed(a.d0, a.a1, a.a0) || !typed(a.d1, a.a1, a.a0) || !typed(a.s, a.a0, a.a1)) {
    rep.violations.push_back(p + ": structure maps are mistyped");
    return;
  }
  if (!simplicial_identities_hold(c, a)) {
    rep.violations.push_back(p + ": d0 s = d1 s = id fails");
    return;
  }
  if (kan.is_null()) {
    rep.lines.push_back(p + ": simplicial identities hold; no stored Kan witness");
    return;
  }
  try {
    const auto w = kan_from_json(c, a, kan, p + ".kan");
    if (auto bad = revalidate_kan(c, a, w))
      rep.violations.push_back(p + ".kan: " + *bad);
    else
      rep.lines.push_back(p + ": Kan witness revalidated");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::malformed) throw;
    rep.violations.push_back(p + ".kan: " + e.what());
  }
}

inline std::vector<FinSet::Object> set_probes(std::initializer_list<FinSet::Object> extra) {
  auto probes = FinSet{}.objects_up_to(3);
  probes.insert(probes.end(), extra);
  return probes;
}

/// Stored pullback and coequalizer certificates, re-run against fresh probes.
inline void check_certificate(const Bundle& b, const std::string& name, const Json& j, CheckReport& rep) {
  const auto p = "certificates." + name;
  const auto kind = text(j, "kind", p);
  const auto carrier = text(j, "carrier", p);
  LimitCert cert;
  if (carrier == "finset") {
    const FinSet s;
    auto fn = [&](const char* k) { return lookup(b.functions, text(j, k, p), "function", p + "." + k); };
    auto set = [&](const char* k) { return lookup(b.sets, text(j, k, p), "set", p + "." + k).object(); };
    if (kind == "pullback") {
      const Pullback<FinSet> pb{set("apex"), fn("left"), fn("right"), fn("f"), fn("g")};
      const auto probes = set_probes({pb.apex});
      cert = certify_pullback(s, pb, std::span<const FinSet::Object>(probes));
    } else if (kind == "coequalizer") {
      const auto probes = set_probes({set("object")});
      cert = certify_coequalizer(s, fn("f"), fn("g"), set("object"), fn("projection"), std::span<const FinSet::Object>(probes));
    } else {
      throw Error(ErrorCode::malformed, where(p, "unknown certificate kind '" + kind + "'"));
    }
  } else {
    if (kind != "pullback") throw Error(ErrorCode::malformed, where(p, "unknown certificate kind '" + kind + "'"));
    const SumsTab s(b.category(carrier));
    auto mor = [&](const char* k) { return lookup(b.sum_morphisms, text(j, k, p), "sum-morphism", p + "." + k).second; };
    const auto apex = lookup(b.sum_objects, text(j, "apex", p), "sum-object", p + ".apex").second;
    const Pullback<SumsTab> pb{apex, mor("left"), mor("right"), mor("f"), mor("g")};
    std::vector<SumsTab::Object> probes = {s.initial(), apex};
    for (const auto& x : s.base().objects()) probes.push_back(s.singleton(x));
    for (const auto& [n, e] : b.sum_objects)
      if (e.first == carrier) probes.push_back(e.second);
    cert = certify_pullback(s, pb, std::span<const SumsTab::Object>(probes));
  }
  if (cert.valid)
    rep.lines.push_back(p + ": " + kind + " certificate revalidated against " + std::to_string(cert.probes.size()) + " probes");
  else
    rep.violations.push_back(p + ": " + cert.witness);
}

}  // namespace detail

/// Axioms of every category, typing of sum-morphisms, simplicial identities
/// and stored Kan witnesses of groupoids, functoriality of presheaves.
inline CheckReport check_bundle(const Bundle& b) {
  CheckReport rep;
  const FinSet sets;
  for (const auto& [name, c] : b.categories) {
    const auto ax = check_category_axioms(c);
    for (const auto& v : ax.violations) rep.violations.push_back("categories." + name + ": " + v);
    if (ax.ok())
      rep.lines.push_back("categories." + name + ": " + std::to_string(c.object_count()) + " objects, " +
                          std::to_string(c.morphism_count()) + " morphisms, axioms hold");
  }
  if (!rep.ok()) return rep;  // nothing downstream is meaningful
  for (const auto& [name, e] : b.sum_morphisms) {
    const auto& [cat, f] = e;
    const auto& c = b.category(cat);
    bool ok = true;
    for (std::size_t k = 0; k < f.index.size(); ++k)
      ok = ok && c.src(f.components[k]) == f.src.family[k] && c.tgt(f.components[k]) == f.tgt.family[f.index[k]];
    if (!ok) rep.violations.push_back("sum-morphisms." + name + ": a component is mistyped");
  }
  for (const auto& [name, g] : b.groupoids) {
    if (g.over_sets) {
      detail::check_groupoid(sets, name, *g.over_sets, g.kan, rep);
    } else {
      const SumsTab s(b.category(g.carrier));
      detail::check_groupoid(s, name, *g.over_sums, g.kan, rep);
    }
  }
  for (const auto& [name, e] : b.presheaves) {
    const Psh psh(b.category(e.category));
    const auto bad = psh.check(e.presheaf);
    for (const auto& v : bad) rep.violations.push_back("presheaves." + name + ": " + v);
    if (bad.empty()) rep.lines.push_back("presheaves." + name + ": functorial");
  }
  if (b.document.contains("certificates"))
    for (const auto& [name, j] : b.document.at("certificates").items()) {
      try {
        detail::check_certificate(b, name, j, rep);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::malformed) throw;
        rep.violations.push_back("certificates." + name + ": " + e.what());
      }
    }
  for (const auto& [name, r] : b.relations)
    rep.lines.push_back("relations." + name + ": " + std::to_string(r.pairs.size()) + " pairs");
  for (const auto& [name, g] : b.grids)
    rep.lines.push_back("grids." + name + ": " + std::to_string(g.objects.size()) + " objects");
  return rep;
}

}  // namespace lexcat::io
