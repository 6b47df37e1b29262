#pragma once

#include <string>
#include <vector>

#include "hcsa/parameters.hpp"

namespace fixtures {

inline std::vector<std::string> first(std::vector<std::string> values, int m) {
  values.resize(static_cast<std::size_t>(m));
  return values;
}

/// q = 3/2, Q = (5, 7) truncated to m.
inline hcsa::ParameterSet nondeg(hcsa::Flavor f, int m) {
  return hcsa::ParameterSet::make(hcsa::Variant::nondegenerate, f, "3/2", first({"5", "7"}, m));
}

/// Q = (5, 15/2) truncated to m. With Q = (5, 7) the product vanishes from n = 3 on.
inline hcsa::ParameterSet deg(hcsa::Flavor f, int m) {
  return hcsa::ParameterSet::make(hcsa::Variant::degenerate, f, "1", first({"5", "15/2"}, m));
}

/// Every (variant, flavor) pair the algebra admits.
inline std::vector<std::pair<hcsa::Variant, hcsa::Flavor>> all_kinds() {
  using hcsa::Flavor;
  using hcsa::Variant;
  return {{Variant::nondegenerate, Flavor::zero},
          {Variant::nondegenerate, Flavor::s},
          {Variant::nondegenerate, Flavor::ss},
          {Variant::degenerate, Flavor::zero},
          {Variant::degenerate, Flavor::s}};
}

inline hcsa::ParameterSet standard(hcsa::Variant v, hcsa::Flavor f, int m) {
  return v == hcsa::Variant::degenerate ? deg(f, m) : nondeg(f, m);
}

}  // namespace fixtures
