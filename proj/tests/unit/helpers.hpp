#pragma once

#include <map>
#include <string>

#include "freeatom/fixtures.hpp"
#include "freeatom/free_algebra.hpp"

namespace testing {

  inline freeatom::VarietyPresentation const& fixture(std::string const& name) {
    static std::map<std::string, freeatom::VarietyPresentation> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
      it = cache.emplace(name, freeatom::load_fixture(name).presentation()).first;
    }
    return it->second;
  }

  inline freeatom::FreeAlgebra free_on(std::string const& name, std::size_t m) {
    return freeatom::build_free_algebra(fixture(name), m);
  }

}  // namespace testing
