#include "freeatom/preorder.hpp"

namespace freeatom {

  PreorderSpec PreorderSpec::parse(std::string_view lhs,
                                   std::string_view rhs,
                                   Signature const& sig) {
    auto const vars = relation_vars();
    return {parse_term(lhs, sig, vars), parse_term(rhs, sig, vars)};
  }

  bool holds(PreorderSpec const& spec, FiniteAlgebra const& alg, Element a, Element b) {
    Element const asg[] = {a, b};
    return evaluate(spec.lhs, alg, asg) == evaluate(spec.rhs, alg, asg);
  }

  bool holds(PreorderSpec const& spec, FreeAlgebra const& fa, ElementId a, ElementId b) {
    Term const args[] = {fa.witness(a), fa.witness(b)};
    return element_of_term(fa, substitute(spec.lhs, args))
           == element_of_term(fa, substitute(spec.rhs, args));
  }

  Relation relation_on(PreorderSpec const& spec, FiniteAlgebra const& alg) {
    Relation rel(alg.size());
    for (Element a = 0; a < alg.size(); ++a) {
      for (Element b = 0; b < alg.size(); ++b) {
        rel.set(a, b, holds(spec, alg, a, b));
      }
    }
    return rel;
  }

  Relation relation_on(PreorderSpec const& spec, FreeAlgebra const& fa) {
    std::vector<Relation> per_generator;
    for (auto const& g : fa.presentation().generators()) {
      per_generator.push_back(relation_on(spec, g));
    }
    auto const& coords = fa.coordinates();
    Relation    rel(fa.size());
    for (ElementId a = 0; a < fa.size(); ++a) {
      for (ElementId b = 0; b < fa.size(); ++b) {
        bool all = true;
        for (std::size_t j = 0; j < coords.size() && all; ++j) {
          all = per_generator[coords[j].generator](fa.value(a, j), fa.value(b, j));
        }
        rel.set(a, b, all);
      }
    }
    return rel;
  }

  PreorderReport verify_preorder(Relation const& rel) {
    PreorderReport report;
    auto const     n = rel.size();
    for (std::size_t a = 0; a < n && report.reflexive; ++a) {
      if (!rel(a, a)) {
        report.reflexive      = false;
        report.irreflexive_at = a;
      }
    }
    for (std::size_t a = 0; a < n && report.transitive; ++a) {
      for (std::size_t b = 0; b < n && report.transitive; ++b) {
        if (!rel(a, b)) {
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (rel(b, c) && !rel(a, c)) {
            report.transitive      = false;
            report.intransitive_at = std::array<std::size_t, 3>{a, b, c};
            break;
          }
        }
      }
    }
    return report;
  }

  std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_failure(
      Relation const& rel) {
    for (std::size_t a = 0; a < rel.size(); ++a) {
      for (std::size_t b = a + 1; b < rel.size(); ++b) {
        if (rel(a, b) && rel(b, a)) {
          return std::pair{a, b};
        }
      }
    }
    return std::nullopt;
  }

  bool strictly_less(Relation const& rel, std::size_t a, std::size_t b) {
    return rel(a, b) && !rel(b, a);
  }

  bool covers(Relation const& rel, std::size_t a, std::size_t c) {
    if (!strictly_less(rel, a, c)) {
      return false;
    }
    for (std::size_t x = 0; x < rel.size(); ++x) {
      if (strictly_less(rel, a, x) && strictly_less(rel, x, c)) {
        return false;
      }
    }
    return true;
  }

  std::vector<std::size_t> covers_in_interval(Relation const& rel,
                                              std::size_t     a,
                                              std::size_t     b) {
    std::vector<std::size_t> result;
    for (std::size_t c = 0; c < rel.size(); ++c) {
      if (rel(c, b) && covers(rel, a, c)) {
        result.push_back(c);
      }
    }
    return result;
  }

  std::size_t find_cover_in_interval(Relation const& rel, std::size_t a, std::size_t b) {
    if (!strictly_less(rel, a, b)) {
      throw PreconditionError("cover search needs a strictly below b");
    }
    for (std::size_t c = 0; c < rel.size(); ++c) {
      if (rel(c, b) && covers(rel, a, c)) {
        return c;
      }
    }
    // Unreachable for a pre-order on a finite set.
    throw PreconditionError("no cover in interval; relation is not a pre-order");
  }

  AtomicityReport is_atomic(Relation const& rel) {
    AtomicityReport report;
    auto const      n = rel.size();
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> cov;
      bool                     any_above = false;
      for (std::size_t c = 0; c < n; ++c) {
        if (strictly_less(rel, a, c)) {
          any_above = true;
          if (covers(rel, a, c)) {
            cov.push_back(c);
          }
        }
      }
      if (!any_above) {
        continue;
      }
      for (std::size_t b = 0; b < n; ++b) {
        if (!strictly_less(rel, a, b)) {
          continue;
        }
        ++report.strict_pairs;
        bool found = false;
        for (auto c : cov) {
          if (rel(c, b)) {
            found = true;
            break;
          }
        }
        if (!found && report.atomic) {
          report.atomic         = false;
          report.counterexample = std::pair{a, b};
        }
      }
    }
    return report;
  }

}  // namespace freeatom
