#pragma once

// Cover-term synthesis for a definable pre-order on a finitely generated free
// algebra of a discriminator variety.
//
// Given alpha < beta in F:
//   1. pick a coordinate j whose projection h : F -> A (A the subalgebra of
//      the generator generated by the images of X) has h(alpha) < h(beta);
//   2. pick a cover c of h(alpha) below h(beta) in the finite algebra A;
//   3. choose representative terms rho(a) with h(rho(a)) = a;
//   4. write down the diagram eta of A in terms of rho: generator equations,
//      operation-table equations, and pairwise disequations;
//   5. compile eta into a single equation delta = epsilon with the switching
//      term;
//   6. gamma := switch(delta, epsilon, rho(c), alpha).
// Steps 3-5 depend only on the coordinate, so they are bundled as a
// CoordinateDiagram.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freeatom/preorder.hpp"

namespace freeatom {

  struct DiagramFormula {
    std::vector<std::pair<Term, Term>> equations;
    std::vector<std::pair<Term, Term>> disequations;
  };

  enum class CompileStrategy { constants_witness, designated_pair };

  char const* to_string(CompileStrategy s) noexcept;

  // Two terms assumed to take distinct values, used to express disequations
  // as equations.
  struct DesignatedPair {
    Term            u;
    Term            w;
    CompileStrategy strategy;
  };

  struct EquationPair {
    Term            delta;
    Term            epsilon;
    CompileStrategy strategy;
  };

  // The projection of F onto a coordinate, corestricted to its image.
  struct Projection {
    std::size_t          coordinate;
    Subalgebra           subalgebra;  // A
    std::vector<Element> h;           // A-label of every element of F
    std::vector<Element> generator_images;  // A-label of each free generator
  };

  Projection project(FreeAlgebra const& fa, std::size_t coordinate);

  // First coordinate (in canonical order) at which beta is not below alpha.
  // Throws PreconditionError unless alpha < beta in F.
  Projection find_separating_hom(FreeAlgebra const&  fa,
                                 PreorderSpec const& spec,
                                 ElementId           alpha,
                                 ElementId           beta);

  // rho(a) for each label a of A: the witness of the first element of F (in
  // canonical order, hence of least size) mapped to a.
  std::vector<Term> build_representatives(FreeAlgebra const& fa, Projection const& proj);

  DiagramFormula build_diagram(Subalgebra const&        A,
                               std::span<Term const>    rho,
                               std::span<Element const> generator_images,
                               std::size_t              variable_count);

  // Least pair of distinct constant symbols whose values differ in every
  // generator.
  std::optional<std::pair<std::size_t, std::size_t>> constant_witness(
      VarietyPresentation const& vp);

  // Constants when constant_witness exists, otherwise (rho(0), rho(1)).
  // nullopt only when A has one element and there are no such constants.
  std::optional<DesignatedPair> choose_designated(VarietyPresentation const& vp,
                                                  std::span<Term const>      rho);

  // Each disequation p != q becomes switch(p, q, u, w) = w. All equations,
  // diagram equations first, are folded left to right with
  //   (p = q) and (r = s)  iff  t(p, q, r) = t(q, p, s)
  // where t is the ternary discriminator, the accumulated pair in the (r, s)
  // slot so that term size grows linearly.
  EquationPair compile_to_equation(DiagramFormula const&                eta,
                                   VarietyPresentation const&           vp,
                                   std::optional<DesignatedPair> const& designated);

  Term build_gamma(EquationPair const&        pair,
                   Term const&                rho_c,
                   Term const&                alpha_witness,
                   VarietyPresentation const& vp);

  struct CoordinateDiagram {
    Projection                    projection;
    std::vector<Term>             rho;
    DiagramFormula                eta;
    std::optional<DesignatedPair> designated;
    EquationPair                  pair;
  };

  CoordinateDiagram diagram_at(FreeAlgebra const& fa, std::size_t coordinate);

  // Whether every equation and disequation of eta holds in B under k.
  bool satisfies(DiagramFormula const&    eta,
                 FiniteAlgebra const&     B,
                 std::span<Element const> k);

  struct EmbeddingCheck {
    bool                 eta_holds   = false;
    std::vector<Element> map;  // a -> k(rho(a))
    bool                 injective   = false;
    bool                 homomorphic = false;

    bool is_embedding() const noexcept {
      return injective && homomorphic;
    }
  };

  // Evaluates eta under k and the map a -> k(rho(a)) from A into B.
  EmbeddingCheck embedding_check(CoordinateDiagram const&  d,
                                 FiniteAlgebra const&      B,
                                 std::span<Element const>  k);

  struct CompilerReport {
    std::size_t              evaluations = 0;
    std::size_t              eta_true    = 0;
    std::size_t              escapes     = 0;  // delta = epsilon, eta false
    std::size_t              singleton_escapes = 0;  // escapes inside a 1-element B
    std::vector<std::string> violations;
  };

  // Over every inventory member B and every assignment k of X into B:
  //   eta[k] implies k(delta) = k(epsilon), and
  //   k(delta) = k(epsilon) implies eta[k], or {k(rho(a))} is a single point
  //   that every element of F is sent to.
  CompilerReport check_compiler(FreeAlgebra const&             fa,
                                CoordinateDiagram const&       d,
                                std::vector<Subalgebra> const& inventory);

  struct EmbeddingReport {
    std::size_t              evaluations = 0;
    std::size_t              eta_true    = 0;
    std::vector<std::string> violations;
  };

  // Whenever eta[k] holds, a -> k(rho(a)) must be an injective homomorphism.
  EmbeddingReport check_embeddings(CoordinateDiagram const&       d,
                                   std::vector<Subalgebra> const& inventory);

  struct Check {
    std::string name;
    bool        passed;
    std::string detail;
  };

  struct CoverCertificate {
    ElementId          alpha;
    ElementId          beta;
    CoordinateDiagram  diagram;
    Element            c;  // A-label of the cover of h(alpha)
    Term               gamma_term;
    ElementId          gamma;
    std::vector<Check> checks;

    bool passed() const noexcept;
  };

  // Exhaustive checks on F:
  //   gamma_term_denotes_gamma, separating_coordinate (h(delta) = h(epsilon)
  //   and h(gamma) = c), alpha_le_gamma_le_beta, gamma_not_le_alpha,
  //   dichotomy (alpha <= tau <= gamma implies tau <= alpha or gamma <= tau),
  //   covers_alpha (independent cover search).
  std::vector<Check> verify_certificate(CoverCertificate const& cert,
                                        FreeAlgebra const&      fa,
                                        Relation const&         rel);

  // Runs the construction for many pairs over one free algebra and pre-order,
  // reusing the per-coordinate diagrams.
  class CoverSynthesizer {
   public:
    // Throws PreconditionError if the relation is not a pre-order on F.
    CoverSynthesizer(FreeAlgebra const& fa, PreorderSpec spec);

    Relation const& relation() const noexcept {
      return _rel;
    }

    CoordinateDiagram const& diagram(std::size_t coordinate);

    // Throws PreconditionError unless alpha < beta.
    CoverCertificate synthesize(ElementId alpha, ElementId beta);

   private:
    FreeAlgebra const&                         _fa;
    PreorderSpec                               _spec;
    Relation                                   _rel;
    std::map<std::size_t, CoordinateDiagram>   _diagrams;
  };

  CoverCertificate synthesize_cover(FreeAlgebra const&  fa,
                                    PreorderSpec const& spec,
                                    ElementId           alpha,
                                    ElementId           beta);

  // The natural order of a Boolean reduct: x <= y iff meet(x, y) = x.
  PreorderSpec boolean_natural_order(Signature const& sig, std::string_view meet);

}  // namespace freeatom
