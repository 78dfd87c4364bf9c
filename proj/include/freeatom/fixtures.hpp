#pragma once

// The bundled fixture corpus and its expected-result manifest.

#include <filesystem>
#include <string>
#include <vector>

#include "freeatom/finite_algebra.hpp"

namespace freeatom {

  struct FixtureOrder {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool        antisymmetric;
    std::size_t strict_pairs;
  };

  struct FixtureConfig {
    std::size_t               m;
    std::size_t               free_size;
    std::vector<FixtureOrder> orders;
  };

  struct Fixture {
    std::string                        name;
    std::vector<std::filesystem::path> files;
    std::string                        switch_text;
    std::vector<FixtureConfig>         configs;

    VarietyPresentation presentation() const;
  };

  std::filesystem::path default_fixture_dir();

  std::vector<Fixture> load_manifest(
      std::filesystem::path const& dir = default_fixture_dir());

  Fixture load_fixture(std::string const&           name,
                       std::filesystem::path const& dir = default_fixture_dir());

  // Generators from every algebra in `files`, with the switching term parsed
  // over x, y, u, v.
  VarietyPresentation load_presentation(std::vector<std::filesystem::path> const& files,
                                        std::string const& switch_text);

}  // namespace freeatom
