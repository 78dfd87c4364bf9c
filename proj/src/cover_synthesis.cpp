#include "freeatom/cover_synthesis.hpp"

#include <algorithm>
#include <set>

namespace freeatom {

  char const* to_string(CompileStrategy s) noexcept {
    switch (s) {
      case CompileStrategy::constants_witness:
        return "constants-witness";
      case CompileStrategy::designated_pair:
        return "designated-pair";
    }
    return "?";
  }

  ////////////////////////////////////////////////////////////////////////
  // Separating homomorphism and representatives
  ////////////////////////////////////////////////////////////////////////

  Projection project(FreeAlgebra const& fa, std::size_t coordinate) {
    if (coordinate >= fa.coordinates().size()) {
      throw PreconditionError("coordinate out of range");
    }
    auto const& coord = fa.coordinates()[coordinate];
    auto const& gen   = fa.generator_at(coordinate);
    auto        sub   = subalgebra_closure(gen, coord.assignment);
    auto        A     = restrict_to(gen, coord.generator, std::move(sub));

    Projection proj{coordinate, std::move(A), {}, {}};
    proj.h.reserve(fa.size());
    std::vector<char> hit(proj.subalgebra.carrier.size(), 0);
    for (ElementId e = 0; e < fa.size(); ++e) {
      auto const a = proj.subalgebra.label_of(fa.value(e, coordinate));
      proj.h.push_back(a);
      hit[a] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
      throw Error("projection is not onto the generated subalgebra");
    }
    for (auto v : coord.assignment) {
      proj.generator_images.push_back(proj.subalgebra.label_of(v));
    }
    return proj;
  }

  Projection find_separating_hom(FreeAlgebra const&  fa,
                                 PreorderSpec const& spec,
                                 ElementId           alpha,
                                 ElementId           beta) {
    auto const&                coords = fa.coordinates();
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      auto const& g = fa.generator_at(j);
      auto const  a = fa.value(alpha, j);
      auto const  b = fa.value(beta, j);
      if (!holds(spec, g, a, b)) {
        throw PreconditionError("alpha is not below beta");
      }
      if (!found && !holds(spec, g, b, a)) {
        found = j;
      }
    }
    if (!found) {
      throw PreconditionError("beta is below alpha, so alpha < beta fails");
    }
    return project(fa, *found);
  }

  std::vector<Term> build_representatives(FreeAlgebra const& fa, Projection const& proj) {
    auto const                     n = proj.subalgebra.carrier.size();
    std::vector<std::optional<Term>> rho(n);
    std::size_t                    missing = n;
    for (ElementId e = 0; e < fa.size() && missing > 0; ++e) {
      auto& slot = rho[proj.h[e]];
      if (!slot) {
        slot = fa.witness(e);
        --missing;
      }
    }
    std::vector<Term> result;
    for (auto& r : rho) {
      if (!r) {
        throw Error("subalgebra element without a representative");
      }
      result.push_back(std::move(*r));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Diagram and compilation
  ////////////////////////////////////////////////////////////////////////

  DiagramFormula build_diagram(Subalgebra const&        A,
                               std::span<Term const>    rho,
                               std::span<Element const> generator_images,
                               std::size_t              variable_count) {
    auto const& alg = A.algebra;
    auto const& sig = alg.signature();
    if (rho.size() != alg.size() || generator_images.size() != variable_count) {
      throw PreconditionError("representatives must cover the subalgebra");
    }
    DiagramFormula eta;
    for (std::size_t i = 0; i < variable_count; ++i) {
      eta.equations.emplace_back(Term::variable(i), rho[generator_images[i]]);
    }
    std::vector<Term> args;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      args.resize(sig[s].arity);
      for_each_tuple(alg.size(), sig[s].arity, [&](std::span<Element const> t) {
        for (std::size_t i = 0; i < t.size(); ++i) {
          args[i] = rho[t[i]];
        }
        eta.equations.emplace_back(Term::apply(s, args), rho[alg.apply(s, t)]);
      });
    }
    for (std::size_t a = 0; a < alg.size(); ++a) {
      for (std::size_t b = a + 1; b < alg.size(); ++b) {
        eta.disequations.emplace_back(rho[a], rho[b]);
      }
    }
    return eta;
  }

  std::optional<std::pair<std::size_t, std::size_t>> constant_witness(
      VarietyPresentation const& vp) {
    auto const&              sig = vp.signature();
    std::vector<std::size_t> constants;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      if (sig[s].arity == 0) {
        constants.push_back(s);
      }
    }
    for (std::size_t i = 0; i < constants.size(); ++i) {
      for (std::size_t j = i + 1; j < constants.size(); ++j) {
        bool const distinct = std::all_of(
            vp.generators().begin(), vp.generators().end(), [&](FiniteAlgebra const& g) {
              return g.table(constants[i])[0] != g.table(constants[j])[0];
            });
        if (distinct) {
          return std::pair{constants[i], constants[j]};
        }
      }
    }
    return std::nullopt;
  }

  std::optional<DesignatedPair> choose_designated(VarietyPresentation const& vp,
                                                  std::span<Term const>      rho) {
    if (auto cw = constant_witness(vp)) {
      return DesignatedPair{Term::apply(cw->first, {}),
                            Term::apply(cw->second, {}),
                            CompileStrategy::constants_witness};
    }
    if (rho.size() >= 2) {
      return DesignatedPair{rho[0], rho[1], CompileStrategy::designated_pair};
    }
    return std::nullopt;
  }

  EquationPair compile_to_equation(DiagramFormula const&                eta,
                                   VarietyPresentation const&           vp,
                                   std::optional<DesignatedPair> const& designated) {
    std::vector<std::pair<Term, Term>> all = eta.equations;
    if (!eta.disequations.empty() && !designated) {
      throw PreconditionError("disequations need a designated pair");
    }
    for (auto const& [p, q] : eta.disequations) {
      all.emplace_back(vp.apply_switch(p, q, designated->u, designated->w),
                       designated->w);
    }
    if (all.empty()) {
      throw PreconditionError("empty diagram");
    }
    auto strategy = designated ? designated->strategy : CompileStrategy::designated_pair;
    Term delta    = all.front().first;
    Term epsilon  = all.front().second;
    for (std::size_t i = 1; i < all.size(); ++i) {
      auto const& [p, q] = all[i];
      Term next_delta    = vp.apply_discriminator(p, q, delta);
      Term next_epsilon  = vp.apply_discriminator(q, p, epsilon);
      delta              = std::move(next_delta);
      epsilon            = std::move(next_epsilon);
    }
    return {std::move(delta), std::move(epsilon), strategy};
  }

  Term build_gamma(EquationPair const&        pair,
                   Term const&                rho_c,
                   Term const&                alpha_witness,
                   VarietyPresentation const& vp) {
    return vp.apply_switch(pair.delta, pair.epsilon, rho_c, alpha_witness);
  }

  CoordinateDiagram diagram_at(FreeAlgebra const& fa, std::size_t coordinate) {
    CoordinateDiagram d{project(fa, coordinate), {}, {}, std::nullopt, {}};
    d.rho        = build_representatives(fa, d.projection);
    d.eta        = build_diagram(d.projection.subalgebra,
                          d.rho,
                          d.projection.generator_images,
                          fa.variables().size());
    d.designated = choose_designated(fa.presentation(), d.rho);
    d.pair       = compile_to_equation(d.eta, fa.presentation(), d.designated);
    return d;
  }

  ////////////////////////////////////////////////////////////////////////
  // Semantic checks of the diagram and its compilation
  ////////////////////////////////////////////////////////////////////////

  bool satisfies(DiagramFormula const&    eta,
                 FiniteAlgebra const&     B,
                 std::span<Element const> k) {
    for (auto const& [p, q] : eta.equations) {
      if (evaluate(p, B, k) != evaluate(q, B, k)) {
        return false;
      }
    }
    for (auto const& [p, q] : eta.disequations) {
      if (evaluate(p, B, k) == evaluate(q, B, k)) {
        return false;
      }
    }
    return true;
  }

  EmbeddingCheck embedding_check(CoordinateDiagram const& d,
                                 FiniteAlgebra const&     B,
                                 std::span<Element const> k) {
    EmbeddingCheck result;
    result.eta_holds = satisfies(d.eta, B, k);
    for (auto const& r : d.rho) {
      result.map.push_back(evaluate(r, B, k));
    }
    std::set<Element> image(result.map.begin(), result.map.end());
    result.injective = image.size() == result.map.size();
    auto const& A    = d.projection.subalgebra.algebra;
    result.homomorphic =
        A.signature() == B.signature() && !homomorphism_failure(A, B, result.map);
    return result;
  }

  namespace {
    std::string describe(Subalgebra const& B, std::span<Element const> k) {
      std::string s = B.algebra.name() + " k=(";
      for (std::size_t i = 0; i < k.size(); ++i) {
        s += (i ? "," : "") + std::to_string(B.carrier[k[i]]);
      }
      return s + ")";
    }
  }  // namespace

  CompilerReport check_compiler(FreeAlgebra const&             fa,
                                CoordinateDiagram const&       d,
                                std::vector<Subalgebra> const& inventory) {
    CompilerReport report;
    auto const     m = fa.variables().size();
    for (auto const& B : inventory) {
      auto const& alg = B.algebra;
      for_each_tuple(alg.size(), m, [&](std::span<Element const> k) {
        ++report.evaluations;
        bool const eta   = satisfies(d.eta, alg, k);
        bool const equal = evaluate(d.pair.delta, alg, k) == evaluate(d.pair.epsilon, alg, k);
        if (eta) {
          ++report.eta_true;
          if (!equal) {
            report.violations.push_back("eta holds but delta != epsilon at "
                                        + describe(B, k));
          }
          return;
        }
        if (!equal) {
          return;
        }
        std::set<Element> image;
        for (auto const& r : d.rho) {
          image.insert(evaluate(r, alg, k));
        }
        if (image.size() != 1) {
          report.violations.push_back("delta = epsilon but eta fails at "
                                      + describe(B, k));
          return;
        }
        auto const point = *image.begin();
        for (ElementId e = 0; e < fa.size(); ++e) {
          if (evaluate(fa.witness(e), alg, k) != point) {
            report.violations.push_back("degenerate evaluation does not collapse F at "
                                        + describe(B, k));
            return;
          }
        }
        ++report.escapes;
        if (alg.size() == 1) {
          ++report.singleton_escapes;
        }
      });
    }
    return report;
  }

  EmbeddingReport check_embeddings(CoordinateDiagram const&       d,
                                   std::vector<Subalgebra> const& inventory) {
    EmbeddingReport report;
    auto const      m = d.projection.generator_images.size();
    for (auto const& B : inventory) {
      for_each_tuple(B.algebra.size(), m, [&](std::span<Element const> k) {
        ++report.evaluations;
        auto check = embedding_check(d, B.algebra, k);
        if (!check.eta_holds) {
          return;
        }
        ++report.eta_true;
        if (!check.is_embedding()) {
          report.violations.push_back(
              std::string(check.injective ? "non-homomorphic" : "non-injective")
              + " map under " + describe(B, k));
        }
      });
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Certificates
  ////////////////////////////////////////////////////////////////////////

  bool CoverCertificate::passed() const noexcept {
    return std::all_of(
        checks.begin(), checks.end(), [](Check const& c) { return c.passed; });
  }

  std::vector<Check> verify_certificate(CoverCertificate const& cert,
                                        FreeAlgebra const&      fa,
                                        Relation const&         rel) {
    std::vector<Check> checks;
    auto const         alpha = cert.alpha;
    auto const         beta  = cert.beta;
    auto const         gamma = cert.gamma;

    {
      auto const denoted = fa.find(evaluate_pointwise(fa, cert.gamma_term));
      checks.push_back({"gamma_term_denotes_gamma",
                        denoted && *denoted == gamma,
                        denoted ? "term denotes element " + std::to_string(*denoted)
                                : "term value outside F"});
    }
    {
      auto const& proj  = cert.diagram.projection;
      auto const  j     = proj.coordinate;
      auto const& gen   = fa.generator_at(j);
      auto const& asg   = fa.coordinates()[j].assignment;
      auto const  hd    = evaluate(cert.diagram.pair.delta, gen, asg);
      auto const  he    = evaluate(cert.diagram.pair.epsilon, gen, asg);
      auto const  hg    = fa.value(gamma, j);
      auto const  c_val = proj.subalgebra.carrier[cert.c];
      checks.push_back({"separating_coordinate",
                        hd == he && hg == c_val,
                        "h(delta)=" + std::to_string(hd) + " h(epsilon)="
                            + std::to_string(he) + " h(gamma)=" + std::to_string(hg)
                            + " c=" + std::to_string(c_val)});
    }
    checks.push_back({"alpha_le_gamma_le_beta",
                      rel(alpha, gamma) && rel(gamma, beta),
                      std::string("alpha<=gamma: ") + (rel(alpha, gamma) ? "yes" : "no")
                          + ", gamma<=beta: " + (rel(gamma, beta) ? "yes" : "no")});
    checks.push_back({"gamma_not_le_alpha", !rel(gamma, alpha), ""});
    {
      std::optional<ElementId> witness;
      std::size_t              between = 0;
      for (ElementId tau = 0; tau < fa.size(); ++tau) {
        if (rel(alpha, tau) && rel(tau, gamma)) {
          ++between;
          if (!rel(tau, alpha) && !rel(gamma, tau) && !witness) {
            witness = tau;
          }
        }
      }
      checks.push_back({"dichotomy",
                        !witness,
                        witness ? "fails at element " + std::to_string(*witness)
                                : std::to_string(between) + " elements in [alpha, gamma]"});
    }
    checks.push_back({"covers_alpha", covers(rel, alpha, gamma), ""});
    return checks;
  }

  CoverSynthesizer::CoverSynthesizer(FreeAlgebra const& fa, PreorderSpec spec)
      : _fa(fa), _spec(std::move(spec)), _rel(relation_on(_spec, fa)) {
    auto report = verify_preorder(_rel);
    if (!report.is_preorder()) {
      throw PreconditionError("relation is not a pre-order on the free algebra");
    }
  }

  CoordinateDiagram const& CoverSynthesizer::diagram(std::size_t coordinate) {
    auto it = _diagrams.find(coordinate);
    if (it == _diagrams.end()) {
      it = _diagrams.emplace(coordinate, diagram_at(_fa, coordinate)).first;
    }
    return it->second;
  }

  CoverCertificate CoverSynthesizer::synthesize(ElementId alpha, ElementId beta) {
    if (alpha >= _fa.size() || beta >= _fa.size()) {
      throw PreconditionError("element id out of range");
    }
    if (!strictly_less(_rel, alpha, beta)) {
      throw PreconditionError("synthesis needs alpha < beta");
    }
    auto const  sep = find_separating_hom(_fa, _spec, alpha, beta);
    auto const& d   = diagram(sep.coordinate);
    auto const& A   = d.projection.subalgebra.algebra;
    auto const  ha  = d.projection.h[alpha];
    auto const  hb  = d.projection.h[beta];
    auto const  c   = static_cast<Element>(
        find_cover_in_interval(relation_on(_spec, A), ha, hb));

    CoverCertificate cert{alpha, beta, d, c, {}, 0, {}};
    cert.gamma_term = build_gamma(d.pair, d.rho[c], _fa.witness(alpha), _fa.presentation());
    cert.gamma      = element_of_term(_fa, cert.gamma_term);
    cert.checks     = verify_certificate(cert, _fa, _rel);
    return cert;
  }

  CoverCertificate synthesize_cover(FreeAlgebra const&  fa,
                                    PreorderSpec const& spec,
                                    ElementId           alpha,
                                    ElementId           beta) {
    CoverSynthesizer synth(fa, spec);
    return synth.synthesize(alpha, beta);
  }

  PreorderSpec boolean_natural_order(Signature const& sig, std::string_view meet) {
    auto idx = sig.find(meet);
    if (!idx) {
      throw UnknownSymbolError("no meet symbol '" + std::string(meet) + "'", 0);
    }
    if (sig[*idx].arity != 2) {
      throw ArityError("meet symbol '" + std::string(meet) + "' must be binary", 0);
    }
    Term const x = Term::variable(0), y = Term::variable(1);
    return {Term::apply(*idx, {x, y}), x};
  }

}  // namespace freeatom
