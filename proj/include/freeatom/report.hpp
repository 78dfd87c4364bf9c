#pragma once

// Human-readable and structured (JSON) renderings of results, and the
// atomicity check that drives both the oracle and the synthesis path.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freeatom/cover_synthesis.hpp"

namespace freeatom {

  using ordered_json = nlohmann::ordered_json;

  std::string term_text(FreeAlgebra const& fa, Term const& t);

  // Certificate with the fields alpha, beta, coordinate, subalgebra, c, rho,
  // eta_equations, eta_disequations, delta, epsilon, gamma, checks.
  ordered_json certificate_json(CoverCertificate const& cert, FreeAlgebra const& fa);
  std::string  certificate_text(CoverCertificate const& cert, FreeAlgebra const& fa);

  ordered_json free_algebra_json(FreeAlgebra const& fa, bool with_elements);
  std::string  free_algebra_text(FreeAlgebra const& fa, bool with_elements);

  struct PairOutcome {
    ElementId   alpha;
    ElementId   beta;
    ElementId   gamma;
    bool        passed;
    std::string failed_checks;  // comma-separated names, empty when passed
  };

  struct AtomicCheckResult {
    std::size_t                    free_size = 0;
    PreorderReport                 preorder;
    bool                           antisymmetric = true;
    std::optional<AtomicityReport> oracle;
    std::optional<std::vector<PairOutcome>> synthesis;

    std::size_t synthesis_failures() const;
    // Both enabled paths report atomic and every certificate verifies.
    bool ok() const;
  };

  AtomicCheckResult run_atomic_check(FreeAlgebra const&  fa,
                                     PreorderSpec const& spec,
                                     bool                oracle,
                                     bool                synthesis);

  ordered_json atomic_check_json(AtomicCheckResult const& r, FreeAlgebra const& fa);
  std::string  atomic_check_text(AtomicCheckResult const& r, FreeAlgebra const& fa);

}  // namespace freeatom
