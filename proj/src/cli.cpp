#include "freeatom/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "freeatom/algebra_io.hpp"
#include "freeatom/fixtures.hpp"
#include "freeatom/report.hpp"

namespace freeatom {

  namespace {

    struct SessionConfig {
      std::vector<std::string> files;
      std::string              switch_text;
      std::string              fixture;
      std::string              fixtures_dir = default_fixture_dir().string();
      std::string              order;
      std::size_t              m = 1;
      std::string              vars;
      std::string              le_lhs;
      std::string              le_rhs;
      std::size_t              free_cap       = FreeAlgebraOptions{}.element_cap;
      std::size_t              subalgebra_cap = InventoryOptions{}.size_cap;
      std::size_t              congruence_cap = 8;
      std::string              format         = "human";
      bool                     dump           = false;
      std::string              alpha;
      std::string              beta;
      bool                     oracle_only    = false;
      bool                     synthesis_only = false;
      std::string              formula;
      std::string              designated_u;
      std::string              designated_w;
    };

    bool structured(SessionConfig const& cfg) {
      return cfg.format == "json";
    }

    std::optional<Fixture> fixture_of(SessionConfig const& cfg) {
      if (cfg.fixture.empty()) {
        return std::nullopt;
      }
      return load_fixture(cfg.fixture, cfg.fixtures_dir);
    }

    std::vector<std::filesystem::path> input_files(SessionConfig const& cfg) {
      std::vector<std::filesystem::path> files(cfg.files.begin(), cfg.files.end());
      if (auto fx = fixture_of(cfg)) {
        files.insert(files.end(), fx->files.begin(), fx->files.end());
      }
      if (files.empty()) {
        throw Error("no algebra files given");
      }
      return files;
    }

    std::string switch_text(SessionConfig const& cfg) {
      if (!cfg.switch_text.empty()) {
        return cfg.switch_text;
      }
      if (auto fx = fixture_of(cfg)) {
        return fx->switch_text;
      }
      throw Error("a switching term is required (--switch or --fixture)");
    }

    VarietyPresentation presentation(SessionConfig const& cfg) {
      return load_presentation(input_files(cfg), switch_text(cfg));
    }

    std::optional<VariableSet> variables(SessionConfig const& cfg) {
      if (cfg.vars.empty()) {
        return std::nullopt;
      }
      std::vector<std::string> names;
      std::stringstream        in(cfg.vars);
      for (std::string name; std::getline(in, name, ',');) {
        names.push_back(name);
      }
      if (names.size() != cfg.m) {
        throw Error("--vars names " + std::to_string(names.size())
                    + " variables but --generators is " + std::to_string(cfg.m));
      }
      return VariableSet(std::move(names));
    }

    VariableSet free_variables(SessionConfig const& cfg) {
      auto v = variables(cfg);
      return v ? *v : VariableSet::standard(cfg.m);
    }

    FreeAlgebra free_algebra(SessionConfig const& cfg) {
      return build_free_algebra(presentation(cfg), cfg.m, {cfg.free_cap}, variables(cfg));
    }

    PreorderSpec preorder_spec(SessionConfig const& cfg, Signature const& sig) {
      if (!cfg.order.empty()) {
        auto fx = fixture_of(cfg);
        if (!fx) {
          throw Error("--order needs --fixture");
        }
        for (auto const& c : fx->configs) {
          for (auto const& o : c.orders) {
            if (o.name == cfg.order) {
              return PreorderSpec::parse(o.lhs, o.rhs, sig);
            }
          }
        }
        throw Error("fixture '" + cfg.fixture + "' has no order '" + cfg.order + "'");
      }
      if (cfg.le_lhs.empty() || cfg.le_rhs.empty()) {
        throw Error("a pre-order is required (--le-lhs and --le-rhs, or --order)");
      }
      return PreorderSpec::parse(cfg.le_lhs, cfg.le_rhs, sig);
    }

    void emit(std::ostream& out, ordered_json const& j) {
      out << j.dump(2) << "\n";
    }

    int cmd_validate(SessionConfig const& cfg, std::ostream& out, std::ostream& err) {
      std::optional<std::string> sw;
      if (!cfg.switch_text.empty() || !cfg.fixture.empty()) {
        sw = switch_text(cfg);
      }
      int rc = exit_ok;
      for (auto const& path : input_files(cfg)) {
        std::vector<ParsedAlgebra> parsed;
        try {
          parsed = parse_algebra_text(read_file(path));
        } catch (ParseError const& e) {
          err << path.string() << ": " << e.what() << "\n";
          rc = std::max<int>(rc, exit_parse);
          continue;
        }
        for (auto const& p : parsed) {
          auto const diags = diagnose(p);
          for (auto const& d : diags) {
            err << path.string() << ": " << d.message << "\n";
          }
          if (!diags.empty()) {
            rc = std::max<int>(rc, exit_parse);
            continue;
          }
          auto const& alg = p.algebra;
          if (sw) {
            auto const term =
                parse_term(*sw, alg.signature(), VarietyPresentation::default_switch_vars());
            auto const check = verify_switching_term(alg, term);
            if (!check.holds) {
              auto const& c = *check.counterexample;
              err << path.string() << ": algebra '" << alg.name()
                  << "': switching term fails at (x,y,u,v) = (" << c[0] << "," << c[1]
                  << "," << c[2] << "," << c[3] << ")\n";
              rc = std::max<int>(rc, exit_switching);
              continue;
            }
          }
          out << path.string() << ": algebra '" << alg.name() << "' size " << alg.size()
              << ", " << alg.signature().size() << " operations: ok"
              << (sw ? ", switching term verified" : "") << "\n";
        }
      }
      return rc;
    }

    int cmd_build_free(SessionConfig const& cfg, std::ostream& out) {
      auto const fa = free_algebra(cfg);
      if (structured(cfg)) {
        emit(out, free_algebra_json(fa, cfg.dump));
      } else {
        out << free_algebra_text(fa, cfg.dump);
      }
      return exit_ok;
    }

    int cmd_check_preorder(SessionConfig const& cfg, std::ostream& out) {
      auto const fa   = free_algebra(cfg);
      auto const spec = preorder_spec(cfg, fa.signature());
      auto const rel  = relation_on(spec, fa);
      auto const rep  = verify_preorder(rel);
      auto const anti = antisymmetry_failure(rel);
      std::size_t strict = 0;
      for (std::size_t a = 0; a < rel.size(); ++a) {
        for (std::size_t b = 0; b < rel.size(); ++b) {
          strict += strictly_less(rel, a, b) ? 1 : 0;
        }
      }
      if (structured(cfg)) {
        ordered_json j = {{"free_size", fa.size()},
                          {"reflexive", rep.reflexive},
                          {"transitive", rep.transitive},
                          {"antisymmetric", !anti},
                          {"strict_pairs", strict}};
        if (rep.irreflexive_at) {
          j["irreflexive_at"] = *rep.irreflexive_at;
        }
        if (rep.intransitive_at) {
          j["intransitive_at"] = *rep.intransitive_at;
        }
        if (anti) {
          j["antisymmetry_failure"] = {anti->first, anti->second};
        }
        emit(out, j);
      } else {
        out << "free algebra: " << fa.size() << " elements\n";
        out << "reflexive:     " << (rep.reflexive ? "yes" : "no") << "\n";
        if (rep.irreflexive_at) {
          out << "  fails at #" << *rep.irreflexive_at << "\n";
        }
        out << "transitive:    " << (rep.transitive ? "yes" : "no") << "\n";
        if (rep.intransitive_at) {
          auto const& t = *rep.intransitive_at;
          out << "  #" << t[0] << " <= #" << t[1] << " <= #" << t[2] << " but not #"
              << t[0] << " <= #" << t[2] << "\n";
        }
        out << "antisymmetric: " << (anti ? "no" : "yes") << "\n";
        if (anti) {
          out << "  #" << anti->first << " " << term_text(fa, fa.witness(anti->first))
              << " and #" << anti->second << " " << term_text(fa, fa.witness(anti->second))
              << " are related both ways\n";
        }
        out << "strict pairs:  " << strict << "\n";
      }
      return rep.is_preorder() ? exit_ok : exit_property;
    }

    int cmd_find_cover(SessionConfig const& cfg, std::ostream& out) {
      auto const fa    = free_algebra(cfg);
      auto const spec  = preorder_spec(cfg, fa.signature());
      auto const alpha = element_of_term(fa, parse_term(cfg.alpha, fa.signature(), fa.variables()));
      auto const beta  = element_of_term(fa, parse_term(cfg.beta, fa.signature(), fa.variables()));
      auto const cert  = synthesize_cover(fa, spec, alpha, beta);
      auto const json  = certificate_json(cert, fa);
      if (structured(cfg)) {
        emit(out, json);
      } else {
        out << certificate_text(cert, fa);
        out << "certificate\n";
        emit(out, json);
      }
      return cert.passed() ? exit_ok : exit_property;
    }

    int cmd_atomic_check(SessionConfig const& cfg, std::ostream& out) {
      if (cfg.oracle_only && cfg.synthesis_only) {
        throw Error("--oracle-only and --synthesis-only are exclusive");
      }
      auto const fa     = free_algebra(cfg);
      auto const spec   = preorder_spec(cfg, fa.signature());
      auto const result = run_atomic_check(fa, spec, !cfg.synthesis_only, !cfg.oracle_only);
      if (structured(cfg)) {
        emit(out, atomic_check_json(result, fa));
      } else {
        out << atomic_check_text(result, fa);
      }
      return result.ok() ? exit_ok : exit_property;
    }

    DiagramFormula read_formula(std::string const&  text,
                                Signature const&    sig,
                                VariableSet const&  vars) {
      DiagramFormula     eta;
      std::istringstream in(text);
      std::size_t        lineno = 0;
      for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto const start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') {
          continue;
        }
        auto const end     = line.find_first_of(" \t", start);
        auto const keyword = line.substr(start, end - start);
        if (keyword != "eq" && keyword != "neq") {
          throw ParseError("line " + std::to_string(lineno) + ": expected 'eq' or 'neq'",
                           lineno);
        }
        std::vector<Term> sides;
        try {
          sides = parse_terms(end == std::string::npos ? "" : line.substr(end), sig, vars);
        } catch (ParseError const& e) {
          throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), lineno);
        }
        if (sides.size() != 2) {
          throw ParseError("line " + std::to_string(lineno) + ": expected two terms", lineno);
        }
        (keyword == "eq" ? eta.equations : eta.disequations)
            .emplace_back(std::move(sides[0]), std::move(sides[1]));
      }
      return eta;
    }

    int cmd_compile_formula(SessionConfig const& cfg, std::ostream& out) {
      auto const vp   = presentation(cfg);
      auto const vars = free_variables(cfg);
      auto const eta  = read_formula(read_file(cfg.formula), vp.signature(), vars);
      std::optional<DesignatedPair> designated;
      if (!cfg.designated_u.empty() || !cfg.designated_w.empty()) {
        if (cfg.designated_u.empty() || cfg.designated_w.empty()) {
          throw Error("--designated-u and --designated-w go together");
        }
        designated = DesignatedPair{parse_term(cfg.designated_u, vp.signature(), vars),
                                    parse_term(cfg.designated_w, vp.signature(), vars),
                                    CompileStrategy::designated_pair};
      } else if (auto cw = constant_witness(vp)) {
        designated = DesignatedPair{Term::apply(cw->first, {}),
                                    Term::apply(cw->second, {}),
                                    CompileStrategy::constants_witness};
      }
      auto const pair  = compile_to_equation(eta, vp, designated);
      auto const delta = print_term(pair.delta, vp.signature(), vars);
      auto const eps   = print_term(pair.epsilon, vp.signature(), vars);
      if (structured(cfg)) {
        ordered_json j = {{"equations", eta.equations.size()},
                          {"disequations", eta.disequations.size()},
                          {"strategy", to_string(pair.strategy)},
                          {"delta", delta},
                          {"epsilon", eps}};
        emit(out, j);
      } else {
        out << eta.equations.size() << " equations, " << eta.disequations.size()
            << " disequations, " << to_string(pair.strategy) << "\n";
        out << "delta   " << delta << "\n";
        out << "epsilon " << eps << "\n";
      }
      return exit_ok;
    }

    int cmd_subalgebras(SessionConfig const& cfg, std::ostream& out) {
      ordered_json all = ordered_json::array();
      for (auto const& path : input_files(cfg)) {
        for (auto const& alg : load_algebra_file(path)) {
          ordered_json subs = ordered_json::array();
          if (!structured(cfg)) {
            out << "algebra '" << alg.name() << "' size " << alg.size() << "\n";
          }
          for (auto const& carrier :
               all_subalgebras(alg, InventoryOptions{}.subset_cap, cfg.subalgebra_cap)) {
            auto const sub   = restrict_to(alg, 0, carrier);
            auto const congs = enumerate_congruences(sub.algebra, cfg.congruence_cap);
            bool const simple = carrier.size() >= 2 && congs.size() == 2;
            if (structured(cfg)) {
              subs.push_back({{"carrier", carrier},
                              {"congruences", congs.size()},
                              {"simple", simple}});
            } else {
              out << "  {";
              for (std::size_t i = 0; i < carrier.size(); ++i) {
                out << (i ? ", " : "") << carrier[i];
              }
              out << "}  " << congs.size() << " congruences" << (simple ? ", simple" : "")
                  << "\n";
            }
          }
          all.push_back({{"algebra", alg.name()}, {"subalgebras", subs}});
        }
      }
      if (structured(cfg)) {
        emit(out, all);
      }
      return exit_ok;
    }

    void presentation_options(CLI::App* cmd, SessionConfig& cfg) {
      cmd->add_option("files", cfg.files, "Algebra files generating the variety");
      cmd->add_option("--switch", cfg.switch_text, "Switching term over x, y, u, v");
      cmd->add_option("--fixture", cfg.fixture, "Use a bundled fixture");
      cmd->add_option("--fixtures-dir", cfg.fixtures_dir, "Fixture directory");
    }

    void free_options(CLI::App* cmd, SessionConfig& cfg) {
      presentation_options(cmd, cfg);
      cmd->add_option("-m,--generators", cfg.m, "Number of free generators")
          ->check(CLI::PositiveNumber);
      cmd->add_option("--vars", cfg.vars, "Comma-separated generator names");
      cmd->add_option("--free-cap", cfg.free_cap, "Free-algebra element cap")
          ->check(CLI::PositiveNumber);
      cmd->add_option("--format", cfg.format, "Output format")
          ->check(CLI::IsMember({"human", "json"}));
    }

    void order_options(CLI::App* cmd, SessionConfig& cfg) {
      cmd->add_option("--le-lhs", cfg.le_lhs, "Left side of the defining equation");
      cmd->add_option("--le-rhs", cfg.le_rhs, "Right side of the defining equation");
      cmd->add_option("--order", cfg.order, "Named pre-order of the fixture");
    }

  }  // namespace

  int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cover-term synthesis for definable pre-orders on free algebras",
                 "freeatom"};
    app.require_subcommand(1);
    SessionConfig cfg;

    auto* validate = app.add_subcommand("validate", "Check algebra files and switching term");
    presentation_options(validate, cfg);

    auto* build = app.add_subcommand("build-free", "Build the free algebra");
    free_options(build, cfg);
    build->add_flag("--dump", cfg.dump, "List every element");

    auto* check = app.add_subcommand("check-preorder", "Verify a definable pre-order");
    free_options(check, cfg);
    order_options(check, cfg);

    auto* cover = app.add_subcommand("find-cover", "Synthesize a cover term");
    free_options(cover, cfg);
    order_options(cover, cfg);
    cover->add_option("--alpha", cfg.alpha, "Lower term")->required();
    cover->add_option("--beta", cfg.beta, "Upper term")->required();

    auto* atomic = app.add_subcommand("atomic-check", "Check atomicity of a pre-order");
    free_options(atomic, cfg);
    order_options(atomic, cfg);
    atomic->add_flag("--oracle-only", cfg.oracle_only, "Only the enumeration path");
    atomic->add_flag("--synthesis-only", cfg.synthesis_only, "Only the synthesis path");

    auto* compile = app.add_subcommand("compile-formula", "Compile eq/neq lines to one equation");
    free_options(compile, cfg);
    compile->add_option("--formula", cfg.formula, "File of 'eq T T' and 'neq T T' lines")
        ->required();
    compile->add_option("--designated-u", cfg.designated_u, "First designated term");
    compile->add_option("--designated-w", cfg.designated_w, "Second designated term");

    auto* subs = app.add_subcommand("subalgebras", "List subuniverses and congruence counts");
    presentation_options(subs, cfg);
    subs->add_option("--subalgebra-cap", cfg.subalgebra_cap, "Largest algebra to enumerate")
        ->check(CLI::PositiveNumber);
    subs->add_option("--congruence-cap", cfg.congruence_cap, "Largest congruence oracle")
        ->check(CLI::PositiveNumber);
    subs->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"human", "json"}));

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (CLI::ParseError const& e) {
      int const rc = app.exit(e, out, err);
      return rc == 0 ? exit_ok : exit_parse;
    }

    try {
      if (*validate) {
        return cmd_validate(cfg, out, err);
      }
      if (*build) {
        return cmd_build_free(cfg, out);
      }
      if (*check) {
        return cmd_check_preorder(cfg, out);
      }
      if (*cover) {
        return cmd_find_cover(cfg, out);
      }
      if (*atomic) {
        return cmd_atomic_check(cfg, out);
      }
      if (*compile) {
        return cmd_compile_formula(cfg, out);
      }
      return cmd_subalgebras(cfg, out);
    } catch (SwitchingTermError const& e) {
      err << "error: " << e.what() << "\n";
      return exit_switching;
    } catch (CapExceeded const& e) {
      err << "error: " << e.what() << " (reached " << e.reached() << ")\n";
      return exit_cap;
    } catch (PreconditionError const& e) {
      err << "error: " << e.what() << "\n";
      return exit_property;
    } catch (ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return exit_parse;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return exit_parse;
    }
  }

}  // namespace freeatom
