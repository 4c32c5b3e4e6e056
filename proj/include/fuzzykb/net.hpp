#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fuzzykb/inclusion.hpp"
#include "fuzzykb/lattice.hpp"
#include "fuzzykb/model.hpp"

namespace fuzzykb {

enum class LinkKind { kind_of, is_a };

/// A hierarchy link valued by a (necessity, possibility) couple.
struct ValuedLink {
  LinkKind kind;
  std::string from;
  std::string to;
  Degree necessity;
  Degree possibility;
};

struct MatchEntry {
  std::string target;
  Degree degree;
  DegreeCouple couple;
};

/// Ranked candidates, degree non-increasing, ties broken by name.
struct MatchResult {
  std::vector<MatchEntry> entries;
};

struct ClassNode {
  FuzzyClass cls;
  std::set<std::string> procedures;
  std::vector<std::string> parents;
};

namespace detail {

inline void rank(std::vector<MatchEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const MatchEntry& a, const MatchEntry& b) {
    if (a.degree.value() != b.degree.value()) return a.degree.value() > b.degree.value();
    return a.target < b.target;
  });
}

// (necessity, possibility) couple of one child value against the container
// attribute: the counterpart is picked by the averaged scalar, the couple is
// that counterpart's per-area degrees.
inline DegreeCouple couple_value_vs_attribute(const SystemValue& t, const SystemAttribute& attr,
                                              PairingMode mode) {
  const SystemValue* best = nullptr;
  double best_deg = -1.0;
  if (mode == PairingMode::strict_name) {
    best = attr.find(t.name());
  } else {
    for (const auto& [n, s] : attr.values()) {
      double d = deg_system_value_inclusion(t, s).value();
      if (d > best_deg) {
        best_deg = d;
        best = &s;
      }
    }
  }
  if (!best) return {Degree(0.0), Degree(0.0)};
  return {deg_area_inclusion(t.necessary(), best->necessary()),
          deg_area_inclusion(t.possible(), best->possible())};
}

// User areas carry no necessary/possible split; the user-rule degree fills
// both slots of the couple.
inline DegreeCouple couple_user_vs_attribute(const FuzzyArea& area, const SystemAttribute& attr,
                                             PairingMode mode, const std::string& label,
                                             UserCompareTarget target) {
  double best = 0.0;
  if (mode == PairingMode::strict_name) {
    if (const SystemValue* s = attr.find(label)) best = deg_user_value_inclusion(area, *s, target).value();
  } else {
    for (const auto& [n, s] : attr.values())
      best = std::max(best, deg_user_value_inclusion(area, s, target).value());
  }
  return {Degree(best), Degree(best)};
}

}  // namespace detail

/// The couple for a class-under-class link: componentwise minimum over the
/// name-paired attributes of the per-value couples.
inline ValuedLink value_kind_of_link(const FuzzyClass& child, const FuzzyClass& parent,
                                     PairingMode mode = PairingMode::best_match) {
  double n = 1.0, p = 1.0;
  bool paired = false;
  for (const auto& [name, attr] : child.attributes()) {
    const SystemAttribute* target = parent.find(name);
    if (!target) continue;
    require_same_domain(*attr.domain(), *target->domain());
    if (attr.values().empty() || target->values().empty()) throw NoPairableVariables();
    paired = true;
    for (const auto& [vname, value] : attr.values()) {
      DegreeCouple c = detail::couple_value_vs_attribute(value, *target, mode);
      n = std::min(n, c.necessity.value());
      p = std::min(p, c.possibility.value());
    }
  }
  if (!paired) throw NoPairableAttributes();
  return {LinkKind::kind_of, child.name(), parent.name(), Degree(n), Degree(p)};
}

inline ValuedLink value_is_a_link(const FuzzyInstance& inst, const FuzzyClass& cls,
                                  PairingMode mode = PairingMode::best_match,
                                  UserCompareTarget target = UserCompareTarget::possible) {
  double n = 1.0, p = 1.0;
  bool paired = false;
  for (const auto& [name, slot] : inst.values()) {
    const SystemAttribute* attr = cls.find(name);
    if (!attr) continue;
    paired = true;
    DegreeCouple c;
    if (const auto* sv = std::get_if<SystemValue>(&slot)) {
      c = detail::couple_value_vs_attribute(*sv, *attr, mode);
    } else {
      const auto& uv = std::get<UserValue>(slot);
      c = detail::couple_user_vs_attribute(uv.area, *attr, mode, uv.label, target);
    }
    n = std::min(n, c.necessity.value());
    p = std::min(p, c.possibility.value());
  }
  if (!paired) throw NoPairableAttributes();
  return {LinkKind::is_a, inst.name(), cls.name(), Degree(n), Degree(p)};
}

/// Class/instance graph with valued links, multiple inheritance of
/// procedures, and the learned user lexicon. Value semantics: copying takes
/// a snapshot; mutations need exclusive access to one copy.
class SemanticNet {
 public:
  void add_domain(DomainPtr domain) {
    if (!domains_.emplace(domain->name(), domain).second) throw DuplicateName(domain->name());
  }

  void add_attribute(SystemAttribute attr) {
    std::string key = attr.name();
    if (!attributes_.emplace(key, std::move(attr)).second) throw DuplicateName(key);
  }

  void add_class(FuzzyClass cls, std::set<std::string> procedures,
                 const std::vector<std::string>& parents) {
    std::string name = cls.name();
    if (classes_.count(name)) throw DuplicateName(name);
    for (const auto& p : parents) {
      if (!classes_.count(p)) throw UnknownParent(p);
      if (p == name || reaches(p, name)) throw CycleDetected(name);
    }
    classes_.emplace(name, ClassNode{std::move(cls), std::move(procedures), parents});
    for (const auto& p : parents) inclusion_links_.emplace_back(name, p);
  }

  void add_instance(FuzzyInstance inst) {
    std::string key = inst.name();
    if (!instances_.emplace(key, std::move(inst)).second) throw DuplicateName(key);
  }

  /// Union of the class's own procedures and all ancestors' along every path.
  std::set<std::string> inherited_procedures(const std::string& cls) const {
    const ClassNode& node = class_node(cls);
    std::set<std::string> out = node.procedures;
    for (const auto& p : node.parents) {
      auto up = inherited_procedures(p);
      out.insert(up.begin(), up.end());
    }
    return out;
  }

  ValuedLink value_kind_of_link(const std::string& child, const std::string& parent,
                                PairingMode mode = PairingMode::best_match) const {
    return fuzzykb::value_kind_of_link(class_node(child).cls, class_node(parent).cls, mode);
  }

  ValuedLink value_is_a_link(const std::string& inst, const std::string& cls,
                             PairingMode mode = PairingMode::best_match,
                             UserCompareTarget target = UserCompareTarget::possible) const {
    auto it = instances_.find(inst);
    if (it == instances_.end()) throw UnknownInstance(inst);
    return fuzzykb::value_is_a_link(it->second, class_node(cls).cls, mode, target);
  }

  /// Latest session wins: re-learning a label overwrites its area.
  void learn_user_label(const std::string& label, const std::string& attribute, FuzzyArea area) {
    auto it = attributes_.find(attribute);
    if (it == attributes_.end()) throw UnknownAttribute(attribute);
    require_same_domain(*it->second.domain(), *area.domain());
    lexicon_.insert_or_assign(label, std::make_pair(attribute, std::move(area)));
  }

  /// Rank one label against the system values of its attribute. A label that
  /// names a system value matches itself at 1; otherwise it must have been
  /// learned.
  MatchResult match_label(const std::string& label,
                          UserCompareTarget target = UserCompareTarget::possible) const {
    MatchResult result;
    if (auto lex = lexicon_.find(label); lex != lexicon_.end()) {
      const auto& [attr_name, area] = lex->second;
      const SystemAttribute& attr = attributes_.at(attr_name);
      for (const auto& [n, s] : attr.values()) {
        Degree d = deg_user_value_inclusion(area, s, target);
        DegreeCouple couple{deg_area_inclusion(area, s.necessary()),
                            deg_area_inclusion(area, s.possible())};
        result.entries.push_back({n, d, couple});
      }
    } else if (const SystemAttribute* attr = attribute_of_value(label)) {
      const SystemValue& self = *attr->find(label);
      for (const auto& [n, s] : attr->values()) {
        Degree d = deg_system_value_inclusion(self, s);
        DegreeCouple couple{deg_area_inclusion(self.necessary(), s.necessary()),
                            deg_area_inclusion(self.possible(), s.possible())};
        result.entries.push_back({n, d, couple});
      }
    } else {
      throw UnknownLabel(label);
    }
    detail::rank(result.entries);
    return result;
  }

  /// Goal label alone ranks system values; with an object label, classes
  /// holding both attributes are ranked by the minimum of the two matches.
  MatchResult match_query(const std::string& goal_label,
                          const std::optional<std::string>& object_label = std::nullopt,
                          UserCompareTarget target = UserCompareTarget::possible) const {
    if (!object_label) return match_label(goal_label, target);
    MatchResult goal = match_label(goal_label, target);
    MatchResult object = match_label(*object_label, target);
    std::string goal_attr = label_attribute(goal_label);
    std::string object_attr = label_attribute(*object_label);
    MatchResult result;
    for (const auto& [cname, node] : classes_) {
      const SystemAttribute* ga = node.cls.find(goal_attr);
      const SystemAttribute* oa = node.cls.find(object_attr);
      if (!ga || !oa) continue;
      auto best_in = [](const MatchResult& r, const SystemAttribute& a) {
        MatchEntry best{"", Degree(0.0), {Degree(0.0), Degree(0.0)}};
        for (const auto& e : r.entries)
          if (a.find(e.target) && e.degree.value() > best.degree.value()) best = e;
        return best;
      };
      MatchEntry g = best_in(goal, *ga);
      MatchEntry o = best_in(object, *oa);
      const MatchEntry& m = g.degree.value() <= o.degree.value() ? g : o;
      result.entries.push_back({cname, m.degree, m.couple});
    }
    detail::rank(result.entries);
    return result;
  }

  std::vector<std::pair<std::string, Degree>> classify_instance(
      const std::string& inst, PairingMode mode = PairingMode::best_match,
      UserCompareTarget target = UserCompareTarget::possible) const {
    auto it = instances_.find(inst);
    if (it == instances_.end()) throw UnknownInstance(inst);
    std::vector<std::pair<std::string, Degree>> out;
    for (const auto& [cname, node] : classes_) {
      try {
        out.emplace_back(cname, deg_instance_membership(it->second, node.cls, mode, target));
      } catch (const NoPairableAttributes&) {
        // class shares no attribute with the instance; skip
      }
    }
    if (out.empty()) throw NoPairableAttributes();
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.second.value() != b.second.value()) return a.second.value() > b.second.value();
      return a.first < b.first;
    });
    return out;
  }

  const std::map<std::string, DomainPtr>& domains() const { return domains_; }
  const std::map<std::string, SystemAttribute>& attributes() const { return attributes_; }
  const std::map<std::string, ClassNode>& classes() const { return classes_; }
  const std::map<std::string, FuzzyInstance>& instances() const { return instances_; }
  const std::map<std::string, std::pair<std::string, FuzzyArea>>& lexicon() const { return lexicon_; }
  const std::vector<std::pair<std::string, std::string>>& inclusion_links() const {
    return inclusion_links_;
  }

  const ClassNode& class_node(const std::string& name) const {
    auto it = classes_.find(name);
    if (it == classes_.end()) throw UnknownClass(name);
    return it->second;
  }

  DomainPtr domain(const std::string& name) const {
    auto it = domains_.find(name);
    if (it == domains_.end()) throw ValidationError("unknown domain '" + name + "'");
    return it->second;
  }

 private:
  bool reaches(const std::string& from, const std::string& to) const {
    if (from == to) return true;
    auto it = classes_.find(from);
    if (it == classes_.end()) return false;
    for (const auto& p : it->second.parents)
      if (reaches(p, to)) return true;
    return false;
  }

  const SystemAttribute* attribute_of_value(const std::string& value_name) const {
    for (const auto& [n, attr] : attributes_)
      if (attr.find(value_name)) return &attr;
    return nullptr;
  }

  std::string label_attribute(const std::string& label) const {
    if (auto it = lexicon_.find(label); it != lexicon_.end()) return it->second.first;
    if (const SystemAttribute* attr = attribute_of_value(label)) return attr->name();
    throw UnknownLabel(label);
  }

  std::map<std::string, DomainPtr> domains_;
  std::map<std::string, SystemAttribute> attributes_;
  std::map<std::string, ClassNode> classes_;
  std::map<std::string, FuzzyInstance> instances_;
  std::map<std::string, std::pair<std::string, FuzzyArea>> lexicon_;
  std::vector<std::pair<std::string, std::string>> inclusion_links_;
};

/// Skeleton net from a concept lattice: one class per concept, labelled by
/// its extent, carrying the intent as its procedure/goal set; one inclusion
/// link per covering edge.
inline SemanticNet net_from_lattice(const ConceptLattice& lat) {
  SemanticNet net;
  auto node_name = [&](const FormalConcept& c) {
    std::string n = "{";
    for (const auto& o : c.extent) {
      if (n.size() > 1) n += ",";
      n += o;
    }
    return n + "}";
  };
  // parents have larger extents; add top-down so links resolve
  std::vector<std::size_t> order(lat.concepts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lat.concepts[a].extent.size() > lat.concepts[b].extent.size();
  });
  std::map<std::size_t, std::vector<std::string>> parents;
  for (const auto& [lo, hi] : lat.hasse)
    parents[lo].push_back(node_name(lat.concepts[hi]));
  for (std::size_t i : order) {
    const FormalConcept& c = lat.concepts[i];
    std::set<std::string> goals(c.intent.begin(), c.intent.end());
    auto p = parents.find(i);
    net.add_class(FuzzyClass(node_name(c)), std::move(goals),
                  p == parents.end() ? std::vector<std::string>{} : p->second);
  }
  return net;
}

}  // namespace fuzzykb
