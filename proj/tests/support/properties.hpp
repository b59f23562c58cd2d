#pragma once

#include <functional>
#include <string>
#include <vector>

namespace properties {

/// A module invariant checked on the shipped fixtures. `check` returns an
/// empty string on success and a short failure description otherwise.
struct Property {
  std::string module;
  std::string name;
  std::function<std::string()> check;
};

const std::vector<Property>& all();

}  // namespace properties
