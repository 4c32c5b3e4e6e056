#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "fuzzykb/model.hpp"

namespace fuzzykb {

/// A degree in [0,1]. Construction clamps floating-point drift inside the
/// tolerance and rejects anything further out.
class Degree {
 public:
  Degree() : value_(0.0) {}
  explicit Degree(double v) {
    if (v < -kDegreeTol || v > 1.0 + kDegreeTol)
      throw ValidationError("degree outside [0,1]: " + std::to_string(v));
    value_ = std::clamp(v, 0.0, 1.0);
  }

  double value() const { return value_; }

  friend bool operator<(const Degree& a, const Degree& b) { return a.value_ < b.value_; }

 private:
  double value_;
};

struct DegreeCouple {
  Degree necessity;
  Degree possibility;
};

/// How linguistic variables of the included attribute pair with those of the
/// container: by the maximizing counterpart, or by identical name with
/// unpaired variables contributing 0.
enum class PairingMode { best_match, strict_name };

/// Which system area a user area is measured against.
enum class UserCompareTarget { possible, necessary, averaged };

inline FuzzyArea area_intersection(const FuzzyArea& t, const FuzzyArea& s) {
  return FuzzyArea::intersection(t, s);
}

/// Normalized overlap of T inside S: sum of the pointwise minima over the sum
/// of T's memberships.
inline Degree deg_area_inclusion(const FuzzyArea& t, const FuzzyArea& s) {
  require_same_domain(*t.domain(), *s.domain());
  double base = t.total();
  if (base <= kDegreeTol) throw EmptyNumeratorBase();
  double overlap = 0.0;
  for (const auto& [v, d] : t.entries()) overlap += std::min(d, s.membership(v));
  return Degree(overlap / base);
}

/// Average of the necessary-side and possible-side inclusion degrees; exactly
/// 1 when T and S are equal as pairs of areas.
inline Degree deg_system_value_inclusion(const SystemValue& t, const SystemValue& s) {
  require_same_domain(*t.domain(), *s.domain());
  if (t.equals(s)) return Degree(1.0);
  double n = deg_area_inclusion(t.necessary(), s.necessary()).value();
  double p = deg_area_inclusion(t.possible(), s.possible()).value();
  return Degree((n + p) / 2.0);
}

inline Degree deg_user_value_inclusion(const FuzzyArea& user, const SystemValue& s,
                                       UserCompareTarget target = UserCompareTarget::possible) {
  switch (target) {
    case UserCompareTarget::possible:
      return deg_area_inclusion(user, s.possible());
    case UserCompareTarget::necessary:
      return deg_area_inclusion(user, s.necessary());
    case UserCompareTarget::averaged: {
      double n = deg_area_inclusion(user, s.necessary()).value();
      double p = deg_area_inclusion(user, s.possible()).value();
      return Degree((n + p) / 2.0);
    }
  }
  throw ValidationError("bad compare target");
}

namespace detail {

// Minimum over the included side's variables of its per-pair degree, under
// the chosen pairing rule. PerPair maps a candidate container value to a
// degree; Items iterates the included side's (name, payload) pairs.
template <typename Map, typename PerPair>
double min_over_pairs(const Map& included, const SystemAttribute& container,
                      PairingMode mode, PerPair&& per_pair) {
  if (included.empty() || container.values().empty()) throw NoPairableVariables();
  double result = 1.0;
  for (const auto& [name, payload] : included) {
    double best = 0.0;
    if (mode == PairingMode::strict_name) {
      if (const SystemValue* sv = container.find(name)) best = per_pair(payload, *sv);
    } else {
      for (const auto& [sname, sv] : container.values())
        best = std::max(best, per_pair(payload, sv));
    }
    result = std::min(result, best);
  }
  return result;
}

}  // namespace detail

inline Degree deg_attribute_inclusion(const SystemAttribute& a, const SystemAttribute& b,
                                      PairingMode mode = PairingMode::best_match) {
  require_same_domain(*a.domain(), *b.domain());
  return Degree(detail::min_over_pairs(a.values(), b, mode,
                                       [](const SystemValue& t, const SystemValue& s) {
                                         return deg_system_value_inclusion(t, s).value();
                                       }));
}

inline Degree deg_attribute_inclusion(const UserAttribute& a, const SystemAttribute& b,
                                      PairingMode mode = PairingMode::best_match,
                                      UserCompareTarget target = UserCompareTarget::possible) {
  require_same_domain(*a.domain(), *b.domain());
  return Degree(detail::min_over_pairs(a.labels(), b, mode,
                                       [target](const FuzzyArea& t, const SystemValue& s) {
                                         return deg_user_value_inclusion(t, s, target).value();
                                       }));
}

/// Minimum over name-paired attributes of the attribute inclusion degree.
inline Degree deg_class_inclusion(const FuzzyClass& c1, const FuzzyClass& c2,
                                  PairingMode mode = PairingMode::best_match) {
  double result = 1.0;
  bool paired = false;
  for (const auto& [name, a] : c1.attributes()) {
    const SystemAttribute* b = c2.find(name);
    if (!b) continue;
    paired = true;
    result = std::min(result, deg_attribute_inclusion(a, *b, mode).value());
  }
  if (!paired) throw NoPairableAttributes();
  return Degree(result);
}

/// Leaf degree of one instance slot inside a class attribute: a system value
/// pairs against the attribute's counterpart via the averaged rule, a
/// user-labelled value via the user rule.
inline Degree deg_slot_membership(const AttributeValue& slot, const SystemAttribute& attr,
                                  PairingMode mode = PairingMode::best_match,
                                  UserCompareTarget target = UserCompareTarget::possible) {
  require_same_domain(*value_domain(slot), *attr.domain());
  if (attr.values().empty()) throw NoPairableVariables();
  double best = 0.0;
  if (const auto* sv = std::get_if<SystemValue>(&slot)) {
    if (mode == PairingMode::strict_name) {
      if (const SystemValue* s = attr.find(sv->name())) best = deg_system_value_inclusion(*sv, *s).value();
    } else {
      for (const auto& [n, s] : attr.values())
        best = std::max(best, deg_system_value_inclusion(*sv, s).value());
    }
  } else {
    const auto& uv = std::get<UserValue>(slot);
    if (mode == PairingMode::strict_name) {
      if (const SystemValue* s = attr.find(uv.label)) best = deg_user_value_inclusion(uv.area, *s, target).value();
    } else {
      for (const auto& [n, s] : attr.values())
        best = std::max(best, deg_user_value_inclusion(uv.area, s, target).value());
    }
  }
  return Degree(best);
}

/// Minimum over name-paired attributes of the slot membership degree.
inline Degree deg_instance_membership(const FuzzyInstance& inst, const FuzzyClass& cls,
                                      PairingMode mode = PairingMode::best_match,
                                      UserCompareTarget target = UserCompareTarget::possible) {
  double result = 1.0;
  bool paired = false;
  for (const auto& [name, slot] : inst.values()) {
    const SystemAttribute* attr = cls.find(name);
    if (!attr) continue;
    paired = true;
    result = std::min(result, deg_slot_membership(slot, *attr, mode, target).value());
  }
  if (!paired) throw NoPairableAttributes();
  return Degree(result);
}

}  // namespace fuzzykb
