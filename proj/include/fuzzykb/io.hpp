#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fuzzykb/lattice.hpp"
#include "fuzzykb/net.hpp"

namespace fuzzykb {

using json = nlohmann::json;

/// A loaded knowledge base: the semantic net plus the optional binary
/// context the class hierarchy is derived from.
struct Kb {
  SemanticNet net;
  std::optional<BinaryContext> context;
};

namespace io_detail {

inline const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing key '" + key + "'");
  return *it;
}

inline std::vector<std::pair<std::string, double>> area_entries(const json& j,
                                                                const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected object of value->degree");
  std::vector<std::pair<std::string, double>> entries;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ParseError(path + "." + k + ": degree must be a number");
    entries.emplace_back(k, v.get<double>());
  }
  return entries;
}

inline FuzzyArea parse_area(const json& j, AreaKind kind, const DomainPtr& domain,
                            const std::string& path) {
  try {
    return make_area(kind, domain, area_entries(j, path));
  } catch (const ParseError&) {
    throw;
  } catch (const KbError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline SystemValue parse_system_value(const std::string& name, const json& j,
                                      const DomainPtr& domain, const std::string& path) {
  FuzzyArea nec = parse_area(member(j, "necessary", path), AreaKind::necessary, domain,
                             path + ".necessary");
  FuzzyArea pos = parse_area(member(j, "possible", path), AreaKind::possible, domain,
                             path + ".possible");
  try {
    return SystemValue(name, std::move(nec), std::move(pos));
  } catch (const KbError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline SystemAttribute parse_attribute(const std::string& name, const json& j,
                                       const SemanticNet& net, const std::string& path) {
  std::string dname = member(j, "domain", path).get<std::string>();
  DomainPtr domain;
  try {
    domain = net.domain(dname);
  } catch (const KbError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  SystemAttribute attr(name, domain);
  for (const auto& [vname, vj] : member(j, "values", path).items())
    attr.add_value(parse_system_value(vname, vj, domain, path + ".values." + vname));
  return attr;
}

inline json dump_area(const FuzzyArea& area) {
  json j = json::object();
  for (const auto& [v, d] : area.entries()) j[v] = d;
  return j;
}

inline json dump_attribute(const SystemAttribute& attr) {
  json values = json::object();
  for (const auto& [n, v] : attr.values())
    values[n] = {{"necessary", dump_area(v.necessary())}, {"possible", dump_area(v.possible())}};
  return {{"domain", attr.domain()->name()}, {"values", values}};
}

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace io_detail

inline BinaryContext parse_context(const json& j, const std::string& path = "context") {
  using io_detail::member;
  std::vector<std::string> objects = member(j, "objects", path).get<std::vector<std::string>>();
  std::vector<std::string> properties =
      member(j, "properties", path).get<std::vector<std::string>>();
  const json& rows = member(j, "incidence", path);
  if (!rows.is_array()) throw ParseError(path + ".incidence: expected array of 0/1 rows");
  std::vector<std::vector<bool>> incidence;
  for (const auto& row : rows) {
    std::vector<bool> r;
    for (const auto& cell : row) {
      int v = cell.get<int>();
      if (v != 0 && v != 1) throw ParseError(path + ".incidence: cells must be 0 or 1");
      r.push_back(v == 1);
    }
    incidence.push_back(std::move(r));
  }
  try {
    return BinaryContext(std::move(objects), std::move(properties), std::move(incidence));
  } catch (const KbError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline Kb parse_kb(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("document root must be an object");

  using io_detail::member;
  Kb kb;
  if (auto it = doc.find("domains"); it != doc.end()) {
    for (const auto& [name, values] : it->items()) {
      try {
        kb.net.add_domain(std::make_shared<Domain>(name, values.get<std::vector<std::string>>()));
      } catch (const KbError& e) {
        throw ValidationError("domains." + name + ": " + e.what());
      }
    }
  }
  if (auto it = doc.find("attributes"); it != doc.end()) {
    for (const auto& [name, aj] : it->items())
      kb.net.add_attribute(io_detail::parse_attribute(name, aj, kb.net, "attributes." + name));
  }
  if (auto it = doc.find("classes"); it != doc.end()) {
    // parents may reference any declared class; insert in dependency order
    std::vector<std::string> pending;
    for (const auto& [name, cj] : it->items()) pending.push_back(name);
    std::size_t guard = pending.size();
    while (!pending.empty()) {
      std::vector<std::string> next;
      for (const auto& name : pending) {
        const json& cj = (*it)[name];
        std::string path = "classes." + name;
        std::vector<std::string> parents;
        if (auto p = cj.find("parents"); p != cj.end())
          parents = p->get<std::vector<std::string>>();
        bool ready = true;
        for (const auto& parent : parents)
          if (!kb.net.classes().count(parent)) {
            if (!it->contains(parent)) throw ValidationError(path + ": unknown parent '" + parent + "'");
            ready = false;
          }
        if (!ready) {
          next.push_back(name);
          continue;
        }
        FuzzyClass cls(name);
        for (const auto& [aname, aj] : member(cj, "attributes", path).items())
          cls.add_attribute(io_detail::parse_attribute(aname, aj, kb.net, path + ".attributes." + aname));
        std::set<std::string> procedures;
        if (auto p = cj.find("procedures"); p != cj.end())
          procedures = p->get<std::set<std::string>>();
        try {
          kb.net.add_class(std::move(cls), std::move(procedures), parents);
        } catch (const KbError& e) {
          throw ValidationError(path + ": " + e.what());
        }
      }
      if (next.size() == guard) throw ValidationError("classes: parent cycle");
      guard = next.size();
      pending = std::move(next);
    }
  }
  if (auto it = doc.find("instances"); it != doc.end()) {
    for (const auto& [name, ij] : it->items()) {
      std::string path = "instances." + name;
      FuzzyInstance inst(name);
      for (const auto& [aname, vj] : member(ij, "values", path).items()) {
        std::string vpath = path + ".values." + aname;
        std::string dname = member(vj, "domain", vpath).get<std::string>();
        DomainPtr domain;
        try {
          domain = kb.net.domain(dname);
        } catch (const KbError& e) {
          throw ValidationError(vpath + ": " + e.what());
        }
        if (vj.contains("label")) {
          std::string label = vj["label"].get<std::string>();
          FuzzyArea area = io_detail::parse_area(member(vj, "area", vpath), AreaKind::user, domain,
                                                 vpath + ".area");
          inst.set_value(aname, UserValue{label, std::move(area)});
        } else if (vj.contains("value")) {
          const json& sv = vj["value"];
          std::string vname = io_detail::member(sv, "name", vpath + ".value").get<std::string>();
          inst.set_value(aname,
                         io_detail::parse_system_value(vname, sv, domain, vpath + ".value"));
        } else {
          throw ParseError(vpath + ": expected 'label'+'area' or 'value'");
        }
      }
      kb.net.add_instance(std::move(inst));
    }
  }
  if (auto it = doc.find("lexicon"); it != doc.end()) {
    for (const auto& [label, lj] : it->items()) {
      std::string path = "lexicon." + label;
      std::string aname = member(lj, "attribute", path).get<std::string>();
      auto attr = kb.net.attributes().find(aname);
      if (attr == kb.net.attributes().end())
        throw ValidationError(path + ": unknown attribute '" + aname + "'");
      FuzzyArea area = io_detail::parse_area(member(lj, "area", path), AreaKind::user,
                                             attr->second.domain(), path + ".area");
      kb.net.learn_user_label(label, aname, std::move(area));
    }
  }
  if (auto it = doc.find("context"); it != doc.end() && !it->is_null())
    kb.context = parse_context(*it);
  return kb;
}

/// Canonical form: keys sorted, two-space indent, trailing newline, degrees
/// at full precision. parse_kb(serialize_kb(x)) == x.
inline std::string serialize_kb(const SemanticNet& net,
                                const std::optional<BinaryContext>& context = std::nullopt) {
  json doc = json::object();
  json domains = json::object();
  for (const auto& [n, d] : net.domains()) domains[n] = d->values();
  doc["domains"] = domains;

  json attributes = json::object();
  for (const auto& [n, a] : net.attributes()) attributes[n] = io_detail::dump_attribute(a);
  doc["attributes"] = attributes;

  json classes = json::object();
  for (const auto& [n, node] : net.classes()) {
    json attrs = json::object();
    for (const auto& [an, a] : node.cls.attributes()) attrs[an] = io_detail::dump_attribute(a);
    classes[n] = {{"attributes", attrs},
                  {"parents", node.parents},
                  {"procedures", node.procedures}};
  }
  doc["classes"] = classes;

  json instances = json::object();
  for (const auto& [n, inst] : net.instances()) {
    json values = json::object();
    for (const auto& [an, slot] : inst.values()) {
      json vj = json::object();
      vj["domain"] = value_domain(slot)->name();
      if (const auto* sv = std::get_if<SystemValue>(&slot)) {
        vj["value"] = {{"name", sv->name()},
                       {"necessary", io_detail::dump_area(sv->necessary())},
                       {"possible", io_detail::dump_area(sv->possible())}};
      } else {
        const auto& uv = std::get<UserValue>(slot);
        vj["label"] = uv.label;
        vj["area"] = io_detail::dump_area(uv.area);
      }
      values[an] = vj;
    }
    instances[n] = {{"values", values}};
  }
  doc["instances"] = instances;

  json lexicon = json::object();
  for (const auto& [label, entry] : net.lexicon())
    lexicon[label] = {{"attribute", entry.first}, {"area", io_detail::dump_area(entry.second)}};
  doc["lexicon"] = lexicon;

  if (context) {
    json rows = json::array();
    for (const auto& row : context->incidence()) {
      json r = json::array();
      for (bool b : row) r.push_back(b ? 1 : 0);
      rows.push_back(r);
    }
    doc["context"] = {{"incidence", rows},
                      {"objects", context->objects()},
                      {"properties", context->properties()}};
  }
  return doc.dump(2) + "\n";
}

inline std::string export_dot(const ConceptLattice& lat) {
  std::string out = "digraph lattice {\n  rankdir=BT;\n";
  auto join = [](const std::set<std::string>& s) {
    std::string r;
    for (const auto& x : s) {
      if (!r.empty()) r += ",";
      r += x;
    }
    return r;
  };
  for (std::size_t i = 0; i < lat.concepts.size(); ++i)
    out += "  c" + std::to_string(i) + " [label=\"{" + join(lat.concepts[i].extent) + "} | {" +
           join(lat.concepts[i].intent) + "}\"];\n";
  for (const auto& [lo, hi] : lat.hasse)
    out += "  c" + std::to_string(lo) + " -> c" + std::to_string(hi) + ";\n";
  return out + "}\n";
}

/// Class graph with kind-of edges annotated by their (necessity, possibility)
/// couple where one is computable.
inline std::string export_dot(const SemanticNet& net) {
  std::string out = "digraph net {\n  rankdir=BT;\n";
  std::map<std::string, std::size_t> ids;
  for (const auto& [n, node] : net.classes()) {
    std::size_t id = ids.size();
    ids[n] = id;
    std::string label = n;
    for (const auto& [an, a] : node.cls.attributes()) label += "\\n" + an;
    out += "  n" + std::to_string(id) + " [label=\"" + label + "\"];\n";
  }
  for (const auto& [child, parent] : net.inclusion_links()) {
    out += "  n" + std::to_string(ids.at(child)) + " -> n" + std::to_string(ids.at(parent));
    try {
      ValuedLink link = net.value_kind_of_link(child, parent);
      out += " [label=\"N=" + io_detail::fmt3(link.necessity.value()) +
             " P=" + io_detail::fmt3(link.possibility.value()) + "\"]";
    } catch (const KbError&) {
      // unvalued structural link
    }
    out += ";\n";
  }
  return out + "}\n";
}

}  // namespace fuzzykb
