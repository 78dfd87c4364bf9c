#include "freeatom/report.hpp"

#include <algorithm>
#include <sstream>

namespace freeatom {

  std::string term_text(FreeAlgebra const& fa, Term const& t) {
    return print_term(t, fa.signature(), fa.variables());
  }

  namespace {
    ordered_json element_json(FreeAlgebra const& fa, ElementId e) {
      return {{"id", e}, {"term", term_text(fa, fa.witness(e))}};
    }

    ordered_json coordinate_json(FreeAlgebra const& fa, std::size_t j) {
      auto const&  coord = fa.coordinates()[j];
      ordered_json asg   = ordered_json::object();
      for (std::size_t i = 0; i < coord.assignment.size(); ++i) {
        asg[fa.variables()[i]] = coord.assignment[i];
      }
      return {{"index", j},
              {"generator", fa.generator_at(j).name()},
              {"assignment", asg}};
    }

    std::string coordinate_text(FreeAlgebra const& fa, std::size_t j) {
      auto const& coord = fa.coordinates()[j];
      std::string s     = "#" + std::to_string(j) + " " + fa.generator_at(j).name() + " [";
      for (std::size_t i = 0; i < coord.assignment.size(); ++i) {
        s += (i ? ", " : "") + fa.variables()[i] + "->"
             + std::to_string(coord.assignment[i]);
      }
      return s + "]";
    }

    ordered_json equations_json(FreeAlgebra const&                        fa,
                                std::vector<std::pair<Term, Term>> const& eqs) {
      ordered_json out = ordered_json::array();
      for (auto const& [l, r] : eqs) {
        out.push_back({term_text(fa, l), term_text(fa, r)});
      }
      return out;
    }
  }  // namespace

  ordered_json certificate_json(CoverCertificate const& cert, FreeAlgebra const& fa) {
    auto const&  d       = cert.diagram;
    auto const&  carrier = d.projection.subalgebra.carrier;
    ordered_json rho     = ordered_json::array();
    for (std::size_t a = 0; a < d.rho.size(); ++a) {
      rho.push_back({{"element", carrier[a]}, {"term", term_text(fa, d.rho[a])}});
    }
    ordered_json checks = ordered_json::array();
    for (auto const& c : cert.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    ordered_json gamma = element_json(fa, cert.gamma);
    gamma["cover_term"] = term_text(fa, cert.gamma_term);
    return {{"alpha", element_json(fa, cert.alpha)},
            {"beta", element_json(fa, cert.beta)},
            {"coordinate", coordinate_json(fa, d.projection.coordinate)},
            {"subalgebra", carrier},
            {"c", carrier[cert.c]},
            {"rho", rho},
            {"eta_equations", equations_json(fa, d.eta.equations)},
            {"eta_disequations", equations_json(fa, d.eta.disequations)},
            {"delta", term_text(fa, d.pair.delta)},
            {"epsilon", term_text(fa, d.pair.epsilon)},
            {"gamma", gamma},
            {"checks", checks}};
  }

  std::string certificate_text(CoverCertificate const& cert, FreeAlgebra const& fa) {
    auto const&        d       = cert.diagram;
    auto const&        carrier = d.projection.subalgebra.carrier;
    std::ostringstream out;
    out << "alpha       #" << cert.alpha << "  " << term_text(fa, fa.witness(cert.alpha))
        << "\n";
    out << "beta        #" << cert.beta << "  " << term_text(fa, fa.witness(cert.beta))
        << "\n";
    out << "coordinate  " << coordinate_text(fa, d.projection.coordinate) << "\n";
    out << "subalgebra  {";
    for (std::size_t i = 0; i < carrier.size(); ++i) {
      out << (i ? ", " : "") << carrier[i];
    }
    out << "}\n";
    out << "h(alpha)=" << carrier[d.projection.h[cert.alpha]]
        << "  h(beta)=" << carrier[d.projection.h[cert.beta]]
        << "  cover c=" << carrier[cert.c] << "\n";
    out << "representatives\n";
    for (std::size_t a = 0; a < d.rho.size(); ++a) {
      out << "  rho(" << carrier[a] << ") = " << term_text(fa, d.rho[a]) << "\n";
    }
    out << "diagram     " << d.eta.equations.size() << " equations, "
        << d.eta.disequations.size() << " disequations\n";
    out << "compiled    " << to_string(d.pair.strategy) << ", delta " << d.pair.delta.size()
        << " nodes, epsilon " << d.pair.epsilon.size() << " nodes\n";
    out << "gamma       #" << cert.gamma << "  " << term_text(fa, fa.witness(cert.gamma))
        << "  (cover term " << cert.gamma_term.size() << " nodes)\n";
    out << "checks\n";
    for (auto const& c : cert.checks) {
      out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) {
        out << "  " << c.detail;
      }
      out << "\n";
    }
    return out.str();
  }

  ordered_json free_algebra_json(FreeAlgebra const& fa, bool with_elements) {
    ordered_json out = {{"generators", fa.variables().names()},
                        {"coordinates", fa.coordinates().size()},
                        {"elements", fa.size()},
                        {"layers", fa.layers()}};
    if (with_elements) {
      ordered_json items = ordered_json::array();
      for (ElementId e = 0; e < fa.size(); ++e) {
        auto const v = fa.values(e);
        items.push_back({{"id", e},
                         {"values", std::vector<Element>(v.begin(), v.end())},
                         {"term", term_text(fa, fa.witness(e))}});
      }
      out["dump"] = items;
    }
    return out;
  }

  std::string free_algebra_text(FreeAlgebra const& fa, bool with_elements) {
    std::ostringstream out;
    out << fa.size() << " elements over " << fa.coordinates().size() << " coordinates\n";
    out << "growth by term size:";
    for (std::size_t i = 0; i < fa.layers().size(); ++i) {
      out << " " << i + 1 << ":" << fa.layers()[i];
    }
    out << "\n";
    if (with_elements) {
      for (ElementId e = 0; e < fa.size(); ++e) {
        out << e << " ";
        for (auto v : fa.values(e)) {
          out << v;
        }
        out << " " << term_text(fa, fa.witness(e)) << "\n";
      }
    }
    return out.str();
  }

  std::size_t AtomicCheckResult::synthesis_failures() const {
    if (!synthesis) {
      return 0;
    }
    return static_cast<std::size_t>(std::count_if(
        synthesis->begin(), synthesis->end(), [](PairOutcome const& p) { return !p.passed; }));
  }

  bool AtomicCheckResult::ok() const {
    return preorder.is_preorder() && (!oracle || oracle->atomic)
           && synthesis_failures() == 0;
  }

  AtomicCheckResult run_atomic_check(FreeAlgebra const&  fa,
                                     PreorderSpec const& spec,
                                     bool                oracle,
                                     bool                synthesis) {
    AtomicCheckResult result;
    result.free_size     = fa.size();
    auto const rel       = relation_on(spec, fa);
    result.preorder      = verify_preorder(rel);
    result.antisymmetric = !antisymmetry_failure(rel);
    if (!result.preorder.is_preorder()) {
      return result;
    }
    if (oracle) {
      result.oracle = is_atomic(rel);
    }
    if (synthesis) {
      CoverSynthesizer synth(fa, spec);
      result.synthesis.emplace();
      for (ElementId a = 0; a < fa.size(); ++a) {
        for (ElementId b = 0; b < fa.size(); ++b) {
          if (!strictly_less(rel, a, b)) {
            continue;
          }
          auto        cert = synth.synthesize(a, b);
          std::string failed;
          for (auto const& c : cert.checks) {
            if (!c.passed) {
              failed += (failed.empty() ? "" : ",") + c.name;
            }
          }
          result.synthesis->push_back({a, b, cert.gamma, cert.passed(), failed});
        }
      }
    }
    return result;
  }

  ordered_json atomic_check_json(AtomicCheckResult const& r, FreeAlgebra const& fa) {
    ordered_json out = {{"free_size", r.free_size},
                        {"preorder",
                         {{"reflexive", r.preorder.reflexive},
                          {"transitive", r.preorder.transitive},
                          {"antisymmetric", r.antisymmetric}}}};
    if (r.oracle) {
      ordered_json o = {{"atomic", r.oracle->atomic},
                        {"strict_pairs", r.oracle->strict_pairs}};
      if (r.oracle->counterexample) {
        o["counterexample"] = {r.oracle->counterexample->first,
                               r.oracle->counterexample->second};
      }
      out["oracle"] = o;
    }
    if (r.synthesis) {
      ordered_json pairs = ordered_json::array();
      for (auto const& p : *r.synthesis) {
        ordered_json item = {{"alpha", p.alpha},
                             {"beta", p.beta},
                             {"gamma", p.gamma},
                             {"gamma_term", term_text(fa, fa.witness(p.gamma))},
                             {"passed", p.passed}};
        if (!p.passed) {
          item["failed"] = p.failed_checks;
        }
        pairs.push_back(item);
      }
      out["synthesis"] = {{"strict_pairs", r.synthesis->size()},
                          {"failures", r.synthesis_failures()},
                          {"pairs", pairs}};
    }
    if (r.oracle && r.synthesis) {
      out["agree"] = r.oracle->atomic == (r.synthesis_failures() == 0)
                     && r.oracle->strict_pairs == r.synthesis->size();
    }
    out["atomic"] = r.ok();
    return out;
  }

  std::string atomic_check_text(AtomicCheckResult const& r, FreeAlgebra const& fa) {
    std::ostringstream out;
    out << "free algebra: " << r.free_size << " elements\n";
    out << "pre-order:    reflexive=" << (r.preorder.reflexive ? "yes" : "no")
        << " transitive=" << (r.preorder.transitive ? "yes" : "no")
        << " antisymmetric=" << (r.antisymmetric ? "yes" : "no") << "\n";
    if (!r.preorder.is_preorder()) {
      out << "relation is not a pre-order; atomicity not checked\n";
      return out.str();
    }
    if (r.oracle) {
      out << "oracle:       " << (r.oracle->atomic ? "atomic" : "NOT atomic") << ", "
          << r.oracle->strict_pairs << " strict pairs\n";
      if (r.oracle->counterexample) {
        out << "  no cover of #" << r.oracle->counterexample->first << " below #"
            << r.oracle->counterexample->second << "\n";
      }
    }
    if (r.synthesis) {
      out << "synthesis:    " << r.synthesis->size() << " certificates, "
          << r.synthesis_failures() << " failed\n";
      for (auto const& p : *r.synthesis) {
        out << "  #" << p.alpha << " < #" << p.beta << "  gamma #" << p.gamma << " "
            << term_text(fa, fa.witness(p.gamma)) << "  "
            << (p.passed ? "ok" : "FAILED " + p.failed_checks) << "\n";
      }
    }
    out << (r.ok() ? "atomic: yes\n" : "atomic: NO\n");
    return out.str();
  }

}  // namespace freeatom
