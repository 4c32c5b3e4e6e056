#pragma once

#include <stdexcept>
#include <string>

namespace fuzzykb {

struct KbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// kb_model
struct DegreeOutOfRange : KbError {
  explicit DegreeOutOfRange(const std::string& value, double degree)
      : KbError("degree out of range for '" + value + "': " + std::to_string(degree)) {}
};
struct UnknownDomainValue : KbError {
  UnknownDomainValue(const std::string& domain, const std::string& value)
      : KbError("value '" + value + "' not in domain '" + domain + "'") {}
};
struct EmptyArea : KbError {
  EmptyArea() : KbError("fuzzy area has empty support") {}
};
struct DuplicateValue : KbError {
  explicit DuplicateValue(const std::string& value)
      : KbError("duplicate value '" + value + "'") {}
};
struct DomainMismatch : KbError {
  DomainMismatch(const std::string& a, const std::string& b)
      : KbError("domain mismatch: '" + a + "' vs '" + b + "'") {}
};

// inclusion_engine
struct NoPairableVariables : KbError {
  NoPairableVariables() : KbError("no pairable linguistic variables") {}
};
struct NoPairableAttributes : KbError {
  NoPairableAttributes() : KbError("no pairable attributes") {}
};
struct EmptyNumeratorBase : KbError {
  EmptyNumeratorBase() : KbError("inclusion base has zero total membership") {}
};

// galois_lattice
struct UnknownObject : KbError {
  explicit UnknownObject(const std::string& name)
      : KbError("unknown object '" + name + "'") {}
};
struct UnknownProperty : KbError {
  explicit UnknownProperty(const std::string& name)
      : KbError("unknown property '" + name + "'") {}
};

// semantic_net
struct UnknownParent : KbError {
  explicit UnknownParent(const std::string& name)
      : KbError("unknown parent class '" + name + "'") {}
};
struct CycleDetected : KbError {
  explicit CycleDetected(const std::string& name)
      : KbError("inclusion link cycle through '" + name + "'") {}
};
struct DuplicateName : KbError {
  explicit DuplicateName(const std::string& name)
      : KbError("duplicate name '" + name + "'") {}
};
struct UnknownClass : KbError {
  explicit UnknownClass(const std::string& name)
      : KbError("unknown class '" + name + "'") {}
};
struct UnknownInstance : KbError {
  explicit UnknownInstance(const std::string& name)
      : KbError("unknown instance '" + name + "'") {}
};
struct UnknownAttribute : KbError {
  explicit UnknownAttribute(const std::string& name)
      : KbError("unknown attribute '" + name + "'") {}
};
struct UnknownLabel : KbError {
  explicit UnknownLabel(const std::string& name)
      : KbError("unknown label '" + name + "'") {}
};

// kb_io_cli
struct ParseError : KbError {
  using KbError::KbError;
};
struct ValidationError : KbError {
  using KbError::KbError;
};

}  // namespace fuzzykb
