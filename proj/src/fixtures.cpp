#include "freeatom/fixtures.hpp"

#include <json.hpp>

#include "freeatom/algebra_io.hpp"

namespace freeatom {

  std::filesystem::path default_fixture_dir() {
#ifdef FREEATOM_FIXTURE_DIR
    return FREEATOM_FIXTURE_DIR;
#else
    return "fixtures";
#endif
  }

  VarietyPresentation load_presentation(std::vector<std::filesystem::path> const& files,
                                        std::string const& switch_text) {
    std::vector<FiniteAlgebra> gens;
    for (auto const& f : files) {
      for (auto& a : load_algebra_file(f)) {
        gens.push_back(std::move(a));
      }
    }
    if (gens.empty()) {
      throw Error("no generating algebras given");
    }
    auto const vars = VarietyPresentation::default_switch_vars();
    auto       sw   = parse_term(switch_text, gens.front().signature(), vars);
    return VarietyPresentation(std::move(gens), std::move(sw), vars);
  }

  VarietyPresentation Fixture::presentation() const {
    return load_presentation(files, switch_text);
  }

  std::vector<Fixture> load_manifest(std::filesystem::path const& dir) {
    auto const doc = nlohmann::json::parse(read_file(dir / "manifest.json"));
    std::vector<Fixture> result;
    for (auto const& f : doc.at("fixtures")) {
      Fixture fx;
      fx.name = f.at("name").get<std::string>();
      for (auto const& file : f.at("files")) {
        fx.files.push_back(dir / file.get<std::string>());
      }
      fx.switch_text = doc.at("switches").at(f.at("switch").get<std::string>());
      for (auto const& c : f.at("configs")) {
        FixtureConfig cfg{c.at("m").get<std::size_t>(),
                          c.at("free_size").get<std::size_t>(),
                          {}};
        for (auto const& [name, expected] : c.at("orders").items()) {
          auto const& order = doc.at("orders").at(name);
          cfg.orders.push_back({name,
                                order.at("lhs").get<std::string>(),
                                order.at("rhs").get<std::string>(),
                                expected.at("antisymmetric").get<bool>(),
                                expected.at("strict_pairs").get<std::size_t>()});
        }
        fx.configs.push_back(std::move(cfg));
      }
      result.push_back(std::move(fx));
    }
    return result;
  }

  Fixture load_fixture(std::string const& name, std::filesystem::path const& dir) {
    for (auto& f : load_manifest(dir)) {
      if (f.name == name) {
        return f;
      }
    }
    throw Error("unknown fixture '" + name + "'");
  }

}  // namespace freeatom
