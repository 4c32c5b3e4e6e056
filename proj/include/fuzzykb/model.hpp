#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzykb/errors.hpp"

namespace fuzzykb {

// Absolute tolerance for all degree comparisons.
inline constexpr double kDegreeTol = 1e-9;

inline bool degree_eq(double a, double b) { return std::fabs(a - b) <= kDegreeTol; }

/// Finite universe of linguistic values (the value domain of an attribute).
class Domain {
 public:
  Domain(std::string name, std::vector<std::string> values)
      : name_(std::move(name)), values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("domain '" + name_ + "' is empty");
    for (const auto& v : values_) {
      if (!index_.insert(v).second) throw DuplicateValue(v);
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& values() const { return values_; }
  bool contains(const std::string& v) const { return index_.count(v) != 0; }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.name_ == b.name_ && a.values_ == b.values_;
  }

 private:
  std::string name_;
  std::vector<std::string> values_;
  std::set<std::string> index_;
};

using DomainPtr = std::shared_ptr<const Domain>;

inline void require_same_domain(const Domain& a, const Domain& b) {
  if (!(a == b)) throw DomainMismatch(a.name(), b.name());
}

enum class AreaKind { necessary, possible, user };

inline const char* to_string(AreaKind k) {
  switch (k) {
    case AreaKind::necessary: return "necessary";
    case AreaKind::possible: return "possible";
    case AreaKind::user: return "user";
  }
  return "?";
}

/// A fuzzy subset of a domain: linguistic values weighted with degrees in
/// (0,1]. Absent values have implicit degree 0. Zero-degree entries are
/// dropped at construction, so equality is support-plus-degrees equality.
class FuzzyArea {
 public:
  FuzzyArea(AreaKind kind, DomainPtr domain,
            const std::vector<std::pair<std::string, double>>& entries)
      : kind_(kind), domain_(std::move(domain)) {
    for (const auto& [value, degree] : entries) {
      if (!domain_->contains(value)) throw UnknownDomainValue(domain_->name(), value);
      if (degree < -kDegreeTol || degree > 1.0 + kDegreeTol)
        throw DegreeOutOfRange(value, degree);
      if (degree <= kDegreeTol) continue;  // absence <=> 0
      if (!entries_.emplace(value, std::min(degree, 1.0)).second)
        throw DuplicateValue(value);
    }
    if (entries_.empty()) throw EmptyArea();
  }

  AreaKind kind() const { return kind_; }
  const DomainPtr& domain() const { return domain_; }
  const std::map<std::string, double>& entries() const { return entries_; }

  /// Membership function, total over the domain (0 for absent values).
  double membership(const std::string& y) const {
    if (!domain_->contains(y)) throw UnknownDomainValue(domain_->name(), y);
    auto it = entries_.find(y);
    return it == entries_.end() ? 0.0 : it->second;
  }

  double total() const {
    double s = 0.0;
    for (const auto& [v, d] : entries_) s += d;
    return s;
  }

  bool empty_support() const { return entries_.empty(); }

  /// Support-plus-degrees equality under the degree tolerance.
  bool equals(const FuzzyArea& other) const {
    if (!(*domain_ == *other.domain_)) return false;
    if (entries_.size() != other.entries_.size()) return false;
    auto it = other.entries_.begin();
    for (const auto& [v, d] : entries_) {
      if (v != it->first || !degree_eq(d, it->second)) return false;
      ++it;
    }
    return true;
  }

  /// Pointwise minimum (Zadeh intersection). The only constructor path that
  /// may yield an empty support.
  static FuzzyArea intersection(const FuzzyArea& a, const FuzzyArea& b) {
    require_same_domain(*a.domain_, *b.domain_);
    FuzzyArea out(a.kind_, a.domain_);
    for (const auto& [v, d] : a.entries_) {
      double m = std::min(d, b.membership(v));
      if (m > kDegreeTol) out.entries_.emplace(v, m);
    }
    return out;
  }

 private:
  FuzzyArea(AreaKind kind, DomainPtr domain) : kind_(kind), domain_(std::move(domain)) {}

  AreaKind kind_;
  DomainPtr domain_;
  std::map<std::string, double> entries_;
};

inline FuzzyArea make_area(AreaKind kind, DomainPtr domain,
                           const std::vector<std::pair<std::string, double>>& entries) {
  return FuzzyArea(kind, std::move(domain), entries);
}

inline double membership(const FuzzyArea& area, const std::string& y) {
  return area.membership(y);
}

/// A system linguistic value: a necessary and a possible area over one domain,
/// with necessity never exceeding possibility pointwise.
class SystemValue {
 public:
  SystemValue(std::string name, FuzzyArea necessary, FuzzyArea possible)
      : name_(std::move(name)),
        necessary_(std::move(necessary)),
        possible_(std::move(possible)) {
    require_same_domain(*necessary_.domain(), *possible_.domain());
    for (const auto& [v, d] : necessary_.entries()) {
      if (d > possible_.membership(v) + kDegreeTol)
        throw ValidationError("value '" + name_ + "': necessity exceeds possibility at '" + v + "'");
    }
  }

  const std::string& name() const { return name_; }
  const FuzzyArea& necessary() const { return necessary_; }
  const FuzzyArea& possible() const { return possible_; }
  const DomainPtr& domain() const { return necessary_.domain(); }

  /// Equality as a pair of areas (the name is a handle, not content).
  bool equals(const SystemValue& other) const {
    return necessary_.equals(other.necessary_) && possible_.equals(other.possible_);
  }

 private:
  std::string name_;
  FuzzyArea necessary_;
  FuzzyArea possible_;
};

/// System attribute: named linguistic values, each carrying its
/// necessary/possible area pair, all over one domain.
class SystemAttribute {
 public:
  SystemAttribute(std::string name, DomainPtr domain) : name_(std::move(name)), domain_(std::move(domain)) {}

  SystemAttribute(std::string name, DomainPtr domain, std::vector<SystemValue> values)
      : SystemAttribute(std::move(name), std::move(domain)) {
    for (auto& v : values) add_value(std::move(v));
  }

  void add_value(SystemValue value) {
    require_same_domain(*domain_, *value.domain());
    std::string key = value.name();
    if (!values_.emplace(key, std::move(value)).second) throw DuplicateValue(key);
  }

  const std::string& name() const { return name_; }
  const DomainPtr& domain() const { return domain_; }
  const std::map<std::string, SystemValue>& values() const { return values_; }

  const SystemValue* find(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? nullptr : &it->second;
  }

 private:
  std::string name_;
  DomainPtr domain_;
  std::map<std::string, SystemValue> values_;
};

/// User attribute: novice labels mapped to user areas over one domain.
class UserAttribute {
 public:
  UserAttribute(std::string name, DomainPtr domain) : name_(std::move(name)), domain_(std::move(domain)) {}

  void add_label(const std::string& label, FuzzyArea area) {
    require_same_domain(*domain_, *area.domain());
    if (!labels_.emplace(label, std::move(area)).second) throw DuplicateValue(label);
  }

  const std::string& name() const { return name_; }
  const DomainPtr& domain() const { return domain_; }
  const std::map<std::string, FuzzyArea>& labels() const { return labels_; }

 private:
  std::string name_;
  DomainPtr domain_;
  std::map<std::string, FuzzyArea> labels_;
};

/// Class as the tuple of its attribute factors.
class FuzzyClass {
 public:
  explicit FuzzyClass(std::string name) : name_(std::move(name)) {}

  void add_attribute(SystemAttribute attr) {
    std::string key = attr.name();
    if (!attributes_.emplace(key, std::move(attr)).second) throw DuplicateName(key);
  }

  const std::string& name() const { return name_; }
  const std::map<std::string, SystemAttribute>& attributes() const { return attributes_; }

  const SystemAttribute* find(const std::string& name) const {
    auto it = attributes_.find(name);
    return it == attributes_.end() ? nullptr : &it->second;
  }

 private:
  std::string name_;
  std::map<std::string, SystemAttribute> attributes_;
};

/// A user-labelled instance slot: the novice word plus its elicited area.
struct UserValue {
  std::string label;
  FuzzyArea area;
};

using AttributeValue = std::variant<SystemValue, UserValue>;

inline const DomainPtr& value_domain(const AttributeValue& v) {
  if (const auto* sv = std::get_if<SystemValue>(&v)) return sv->domain();
  return std::get<UserValue>(v).area.domain();
}

/// Instance as the tuple of its attribute values.
class FuzzyInstance {
 public:
  explicit FuzzyInstance(std::string name) : name_(std::move(name)) {}

  void set_value(const std::string& attribute, AttributeValue value) {
    if (!values_.emplace(attribute, std::move(value)).second) throw DuplicateName(attribute);
  }

  const std::string& name() const { return name_; }
  const std::map<std::string, AttributeValue>& values() const { return values_; }

 private:
  std::string name_;
  std::map<std::string, AttributeValue> values_;
};

}  // namespace fuzzykb
