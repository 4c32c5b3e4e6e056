#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fuzzykb/errors.hpp"

namespace fuzzykb {

/// Binary object x property incidence table.
class BinaryContext {
 public:
  BinaryContext(std::vector<std::string> objects, std::vector<std::string> properties,
                std::vector<std::vector<bool>> incidence)
      : objects_(std::move(objects)),
        properties_(std::move(properties)),
        incidence_(std::move(incidence)) {
    check_unique(objects_, "object");
    check_unique(properties_, "property");
    if (objects_.size() > 62 || properties_.size() > 62)
      throw ValidationError("context larger than 62x62 not supported");
    if (incidence_.size() != objects_.size())
      throw ValidationError("incidence row count does not match object count");
    for (const auto& row : incidence_)
      if (row.size() != properties_.size())
        throw ValidationError("incidence column count does not match property count");
    for (std::size_t i = 0; i < objects_.size(); ++i) obj_index_[objects_[i]] = i;
    for (std::size_t j = 0; j < properties_.size(); ++j) prop_index_[properties_[j]] = j;
    obj_rows_.resize(objects_.size(), 0);
    prop_cols_.resize(properties_.size(), 0);
    for (std::size_t i = 0; i < objects_.size(); ++i)
      for (std::size_t j = 0; j < properties_.size(); ++j)
        if (incidence_[i][j]) {
          obj_rows_[i] |= std::uint64_t{1} << j;
          prop_cols_[j] |= std::uint64_t{1} << i;
        }
  }

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& properties() const { return properties_; }
  const std::vector<std::vector<bool>>& incidence() const { return incidence_; }

  std::size_t object_index(const std::string& o) const {
    auto it = obj_index_.find(o);
    if (it == obj_index_.end()) throw UnknownObject(o);
    return it->second;
  }
  std::size_t property_index(const std::string& p) const {
    auto it = prop_index_.find(p);
    if (it == prop_index_.end()) throw UnknownProperty(p);
    return it->second;
  }

  std::uint64_t all_objects_mask() const { return full_mask(objects_.size()); }
  std::uint64_t all_properties_mask() const { return full_mask(properties_.size()); }

  /// Properties common to every object in the mask (the ' operator).
  std::uint64_t derive_objects_mask(std::uint64_t objs) const {
    std::uint64_t props = all_properties_mask();
    for (std::size_t i = 0; i < objects_.size(); ++i)
      if (objs >> i & 1) props &= obj_rows_[i];
    return props;
  }

  /// Objects holding every property in the mask (the dual ' operator).
  std::uint64_t derive_properties_mask(std::uint64_t props) const {
    std::uint64_t objs = all_objects_mask();
    for (std::size_t j = 0; j < properties_.size(); ++j)
      if (props >> j & 1) objs &= prop_cols_[j];
    return objs;
  }

  std::uint64_t object_mask(const std::set<std::string>& names) const {
    std::uint64_t m = 0;
    for (const auto& n : names) m |= std::uint64_t{1} << object_index(n);
    return m;
  }
  std::uint64_t property_mask(const std::set<std::string>& names) const {
    std::uint64_t m = 0;
    for (const auto& n : names) m |= std::uint64_t{1} << property_index(n);
    return m;
  }
  std::set<std::string> object_names(std::uint64_t mask) const { return names(mask, objects_); }
  std::set<std::string> property_names(std::uint64_t mask) const { return names(mask, properties_); }

 private:
  static std::uint64_t full_mask(std::size_t n) {
    return n == 0 ? 0 : ~std::uint64_t{0} >> (64 - n);
  }
  static void check_unique(const std::vector<std::string>& ids, const char* what) {
    std::set<std::string> seen;
    for (const auto& id : ids)
      if (!seen.insert(id).second)
        throw ValidationError(std::string("duplicate ") + what + " '" + id + "'");
  }
  static std::set<std::string> names(std::uint64_t mask, const std::vector<std::string>& ids) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask >> i & 1) out.insert(ids[i]);
    return out;
  }

  std::vector<std::string> objects_;
  std::vector<std::string> properties_;
  std::vector<std::vector<bool>> incidence_;
  std::map<std::string, std::size_t> obj_index_, prop_index_;
  std::vector<std::uint64_t> obj_rows_, prop_cols_;
};

inline std::set<std::string> derive_objects(const BinaryContext& ctx,
                                            const std::set<std::string>& objects) {
  return ctx.property_names(ctx.derive_objects_mask(ctx.object_mask(objects)));
}

inline std::set<std::string> derive_properties(const BinaryContext& ctx,
                                               const std::set<std::string>& properties) {
  return ctx.object_names(ctx.derive_properties_mask(ctx.property_mask(properties)));
}

/// Extent/intent pair, each exactly the derivation of the other.
struct FormalConcept {
  std::set<std::string> extent;
  std::set<std::string> intent;

  friend bool operator==(const FormalConcept& a, const FormalConcept& b) {
    return a.extent == b.extent && a.intent == b.intent;
  }
};

/// All formal concepts of the context, via lectic closure enumeration over
/// object sets. Sorted by (extent size, lexicographic extent).
inline std::vector<FormalConcept> enumerate_concepts(const BinaryContext& ctx) {
  const std::size_t n = ctx.objects().size();
  auto close = [&](std::uint64_t objs) {
    return ctx.derive_properties_mask(ctx.derive_objects_mask(objs));
  };

  std::vector<std::uint64_t> extents;
  std::uint64_t current = close(0);
  extents.push_back(current);
  const std::uint64_t full = ctx.all_objects_mask();
  while (current != full) {
    // next closure in lectic order (Ganter)
    std::uint64_t next = 0;
    for (std::size_t i = n; i-- > 0;) {
      std::uint64_t bit = std::uint64_t{1} << i;
      if (current & bit) {
        current &= ~bit;
      } else {
        std::uint64_t candidate = close(current | bit);
        // candidate must not add any element below i
        if ((candidate & ~current & (bit - 1)) == 0) {
          next = candidate;
          break;
        }
      }
    }
    current = next;
    extents.push_back(current);
  }

  std::vector<FormalConcept> out;
  out.reserve(extents.size());
  for (std::uint64_t e : extents)
    out.push_back({ctx.object_names(e), ctx.property_names(ctx.derive_objects_mask(e))});
  std::sort(out.begin(), out.end(), [](const FormalConcept& a, const FormalConcept& b) {
    if (a.extent.size() != b.extent.size()) return a.extent.size() < b.extent.size();
    return a.extent < b.extent;
  });
  return out;
}

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Covering edges (lower, upper) of the extent-containment order. Upper
/// neighbours are the minimal strict supersets.
inline EdgeList hasse_edges(const std::vector<FormalConcept>& concepts) {
  auto subset = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    return a.size() < b.size() &&
           std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  EdgeList edges;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    std::vector<std::size_t> uppers;
    for (std::size_t j = 0; j < concepts.size(); ++j)
      if (subset(concepts[i].extent, concepts[j].extent)) uppers.push_back(j);
    for (std::size_t j : uppers) {
      bool minimal = true;
      for (std::size_t k : uppers)
        if (k != j && subset(concepts[k].extent, concepts[j].extent)) {
          minimal = false;
          break;
        }
      if (minimal) edges.emplace_back(i, j);
    }
  }
  return edges;
}

struct ConceptLattice {
  std::vector<FormalConcept> concepts;
  EdgeList order;  // all strict extent-containment pairs
  EdgeList hasse;  // covering edges
};

inline ConceptLattice build_lattice(const BinaryContext& ctx) {
  ConceptLattice lat;
  lat.concepts = enumerate_concepts(ctx);
  auto subset = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (std::size_t i = 0; i < lat.concepts.size(); ++i)
    for (std::size_t j = 0; j < lat.concepts.size(); ++j)
      if (subset(lat.concepts[i].extent, lat.concepts[j].extent)) lat.order.emplace_back(i, j);
  lat.hasse = hasse_edges(lat.concepts);
  return lat;
}

/// Extent containment holds exactly when intent containment holds reversed,
/// over every concept pair.
inline bool duality_check(const ConceptLattice& lat) {
  auto subset_eq = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (std::size_t i = 0; i < lat.concepts.size(); ++i)
    for (std::size_t j = 0; j < lat.concepts.size(); ++j) {
      bool ext = subset_eq(lat.concepts[i].extent, lat.concepts[j].extent);
      bool in = subset_eq(lat.concepts[j].intent, lat.concepts[i].intent);
      if (ext != in) return false;
    }
  return true;
}

}  // namespace fuzzykb
