#pragma once

#include <string>
#include <vector>

#include "mlgeo/horn.hpp"
#include "mlgeo/linmatroid.hpp"
#include "mlgeo/toricgp.hpp"

namespace mlgeo::catalog {

// Named models used by the CLI and the reproduction harness. Expected values
// carry a source label: "literature" for numbers taken from published tables,
// "derived" for values recomputed from closed forms, "direct" for immediate
// arithmetic.
struct Expected {
  std::string quantity;
  std::string value;
  std::string source;
};

struct Entry {
  std::string name;
  std::string kind;  // variety | horn | toric | linear | rank
  std::string note;
  std::vector<Expected> expected;
};

std::vector<Entry> entries();

VarietySpec variety(const std::string& name);
HornModel horn(const std::string& name);
ToricModel toric(const std::string& name);
LinearModel linear(const std::string& name);

// Resolve "catalog:<name>" CLI references to a variety spec.
bool isCatalogRef(const std::string& s);
VarietySpec resolveVariety(const std::string& ref);

}  // namespace mlgeo::catalog
