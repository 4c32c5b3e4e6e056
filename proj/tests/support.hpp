// Shared test fixtures, random generators, and independent brute-force
// oracles. The oracles work on raw containers and deliberately avoid the
// library's computation paths.
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fuzzykb/lattice.hpp"
#include "fuzzykb/model.hpp"
#include "fuzzykb/net.hpp"

namespace kbtest {

using namespace fuzzykb;

// --- paper worked-example fixtures ---------------------------------------

inline DomainPtr procedure_domain() {
  static DomainPtr d = std::make_shared<Domain>(
      "procedure", std::vector<std::string>{"EraseWithMenu", "EraseWithKey", "SelectToGoThrough",
                                            "SelectToDelimit", "CutWithMenu"});
  return d;
}

inline FuzzyArea erase_necessary() {
  return make_area(AreaKind::necessary, procedure_domain(),
                   {{"EraseWithMenu", 1.0}, {"EraseWithKey", 0.9}, {"CutWithMenu", 0.6}});
}
inline FuzzyArea erase_possible() {
  return make_area(AreaKind::possible, procedure_domain(),
                   {{"EraseWithMenu", 1.0}, {"EraseWithKey", 1.0}, {"CutWithMenu", 0.8}});
}
inline FuzzyArea select_necessary() {
  return make_area(AreaKind::necessary, procedure_domain(),
                   {{"SelectToGoThrough", 1.0}, {"SelectToDelimit", 0.8}});
}
inline FuzzyArea select_possible() {
  return make_area(AreaKind::possible, procedure_domain(),
                   {{"SelectToGoThrough", 1.0}, {"SelectToDelimit", 1.0}});
}
inline FuzzyArea gum_area() {
  return make_area(AreaKind::user, procedure_domain(),
                   {{"EraseWithMenu", 1.0}, {"EraseWithKey", 0.7}, {"CutWithMenu", 0.5}});
}
inline FuzzyArea remove_necessary() {
  return make_area(AreaKind::necessary, procedure_domain(),
                   {{"EraseWithMenu", 0.8}, {"CutWithMenu", 1.0}});
}
inline FuzzyArea remove_possible() {
  return make_area(AreaKind::possible, procedure_domain(),
                   {{"EraseWithMenu", 1.0}, {"CutWithMenu", 1.0}});
}

inline SystemValue erase_value() { return {"Erase", erase_necessary(), erase_possible()}; }
inline SystemValue select_value() { return {"Select", select_necessary(), select_possible()}; }
inline SystemValue remove_value() { return {"Remove", remove_necessary(), remove_possible()}; }

inline SystemAttribute goal_attribute() {
  return {"goal", procedure_domain(), {erase_value(), select_value()}};
}

// --- independent summation oracle for inclusion degrees ------------------

using RawArea = std::map<std::string, double>;

inline RawArea raw(const FuzzyArea& a) { return a.entries(); }

// Eq.-by-hand recomputation: walk the whole universe summing minima.
inline double oracle_area_inclusion(const RawArea& t, const RawArea& s,
                                    const std::vector<std::string>& universe) {
  double num = 0.0, den = 0.0;
  for (const auto& y : universe) {
    double ft = t.count(y) ? t.at(y) : 0.0;
    double fs = s.count(y) ? s.at(y) : 0.0;
    num += ft < fs ? ft : fs;
    den += ft;
  }
  return num / den;
}

// --- random generators ----------------------------------------------------

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  double degree() { return std::uniform_int_distribution<int>(1, 100)(gen) / 100.0; }
  bool flip(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
};

inline DomainPtr random_domain(Rng& rng, int max_size = 8) {
  int n = rng.uniform(2, max_size);
  std::vector<std::string> values;
  for (int i = 0; i < n; ++i) values.push_back("v" + std::to_string(i));
  return std::make_shared<Domain>("d" + std::to_string(n), std::move(values));
}

inline FuzzyArea random_area(Rng& rng, const DomainPtr& domain, AreaKind kind = AreaKind::user) {
  std::vector<std::pair<std::string, double>> entries;
  while (entries.empty())
    for (const auto& v : domain->values())
      if (rng.flip(0.6)) entries.emplace_back(v, rng.degree());
  return make_area(kind, domain, entries);
}

// Generates the possible area first, then scales a sub-support of it down so
// that necessity <= possibility holds by construction.
inline SystemValue random_system_value(Rng& rng, const DomainPtr& domain, const std::string& name) {
  FuzzyArea possible = random_area(rng, domain, AreaKind::possible);
  std::vector<std::pair<std::string, double>> nec;
  while (nec.empty())
    for (const auto& [v, d] : possible.entries())
      if (rng.flip(0.7)) nec.emplace_back(v, std::max(0.01, d * rng.degree()));
  return {name, make_area(AreaKind::necessary, domain, nec), std::move(possible)};
}

inline SystemAttribute random_attribute(Rng& rng, const DomainPtr& domain, const std::string& name,
                                        int max_values = 3) {
  SystemAttribute attr(name, domain);
  int n = rng.uniform(1, max_values);
  for (int i = 0; i < n; ++i)
    attr.add_value(random_system_value(rng, domain, name + "_val" + std::to_string(i)));
  return attr;
}

inline BinaryContext random_context(Rng& rng, int max_objects, int max_properties) {
  int n = rng.uniform(1, max_objects);
  int m = rng.uniform(1, max_properties);
  std::vector<std::string> objects, properties;
  for (int i = 0; i < n; ++i) objects.push_back("o" + std::to_string(i));
  for (int j = 0; j < m; ++j) properties.push_back("p" + std::to_string(j));
  std::vector<std::vector<bool>> incidence(n, std::vector<bool>(m));
  for (auto& row : incidence)
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = rng.flip();
  return {std::move(objects), std::move(properties), std::move(incidence)};
}

inline SemanticNet random_kb(Rng& rng) {
  SemanticNet net;
  auto dom = random_domain(rng, 6);
  net.add_domain(dom);
  int attrs = rng.uniform(1, 3);
  for (int i = 0; i < attrs; ++i)
    net.add_attribute(random_attribute(rng, dom, "attr" + std::to_string(i)));

  int classes = rng.uniform(1, 4);
  std::vector<std::string> names;
  for (int i = 0; i < classes; ++i) {
    std::string name = "class" + std::to_string(i);
    FuzzyClass cls(name);
    cls.add_attribute(random_attribute(rng, dom, "attr0"));
    std::vector<std::string> parents;
    if (!names.empty() && rng.flip())
      parents.push_back(names[rng.uniform(0, int(names.size()) - 1)]);
    net.add_class(std::move(cls), {"proc" + std::to_string(i)}, parents);
    names.push_back(name);
  }
  if (rng.flip()) {
    FuzzyInstance inst("inst0");
    if (rng.flip())
      inst.set_value("attr0", random_system_value(rng, dom, "iv"));
    else
      inst.set_value("attr0", UserValue{"word", random_area(rng, dom)});
    net.add_instance(std::move(inst));
  }
  if (rng.flip()) net.learn_user_label("label0", "attr0", random_area(rng, dom));
  return net;
}

// --- brute-force lattice oracles -----------------------------------------

// Close every object subset, deduplicate: the definitional concept set.
inline std::vector<FormalConcept> oracle_concepts(const BinaryContext& ctx) {
  const auto& objects = ctx.objects();
  const auto& properties = ctx.properties();
  const auto& inc = ctx.incidence();
  auto common_props = [&](const std::set<std::string>& objs) {
    std::set<std::string> out;
    for (std::size_t j = 0; j < properties.size(); ++j) {
      bool all = true;
      for (std::size_t i = 0; i < objects.size(); ++i)
        if (objs.count(objects[i]) && !inc[i][j]) {
          all = false;
          break;
        }
      if (all) out.insert(properties[j]);
    }
    return out;
  };
  auto common_objs = [&](const std::set<std::string>& props) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      bool all = true;
      for (std::size_t j = 0; j < properties.size(); ++j)
        if (props.count(properties[j]) && !inc[i][j]) {
          all = false;
          break;
        }
      if (all) out.insert(objects[i]);
    }
    return out;
  };

  std::set<std::pair<std::set<std::string>, std::set<std::string>>> seen;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << objects.size()); ++bits) {
    std::set<std::string> subset;
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (bits >> i & 1) subset.insert(objects[i]);
    std::set<std::string> intent = common_props(subset);
    std::set<std::string> extent = common_objs(intent);
    seen.insert({extent, intent});
  }
  std::vector<FormalConcept> out;
  for (const auto& [e, i] : seen) out.push_back({e, i});
  std::sort(out.begin(), out.end(), [](const FormalConcept& a, const FormalConcept& b) {
    if (a.extent.size() != b.extent.size()) return a.extent.size() < b.extent.size();
    return a.extent < b.extent;
  });
  return out;
}

// Naive transitive reduction of the extent-containment order: drop every
// pair that factors through a third concept.
inline EdgeList oracle_transitive_reduction(const std::vector<FormalConcept>& concepts) {
  auto lt = [&](std::size_t a, std::size_t b) {
    const auto& x = concepts[a].extent;
    const auto& y = concepts[b].extent;
    return x.size() < y.size() && std::includes(y.begin(), y.end(), x.begin(), x.end());
  };
  EdgeList edges;
  for (std::size_t i = 0; i < concepts.size(); ++i)
    for (std::size_t j = 0; j < concepts.size(); ++j) {
      if (!lt(i, j)) continue;
      bool covered = true;
      for (std::size_t k = 0; k < concepts.size(); ++k)
        if (lt(i, k) && lt(k, j)) {
          covered = false;
          break;
        }
      if (covered) edges.emplace_back(i, j);
    }
  return edges;
}

}  // namespace kbtest
