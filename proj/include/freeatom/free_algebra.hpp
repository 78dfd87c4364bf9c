#pragma once

// The free algebra of the variety generated by a presentation, on a finite
// set X of free generators, realized inside the product of all generator
// copies indexed by assignments X -> generator. An element is its vector of
// values, one per coordinate.

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "freeatom/finite_algebra.hpp"

namespace freeatom {

  using ElementId = std::size_t;

  struct Coordinate {
    std::size_t generator;
    Assignment  assignment;  // one value per free generator
  };

  // Every assignment of X into every generator, generator-major and then
  // lexicographic in the assignment (first variable most significant).
  std::vector<Coordinate> coordinate_system(VarietyPresentation const& vp,
                                            std::size_t               m);

  struct FreeAlgebraOptions {
    std::size_t element_cap = 20000;
  };

  class FreeAlgebra {
   public:
    VarietyPresentation const& presentation() const noexcept {
      return _vp;
    }
    VariableSet const& variables() const noexcept {
      return _vars;
    }
    Signature const& signature() const noexcept {
      return _vp.signature();
    }
    std::vector<Coordinate> const& coordinates() const noexcept {
      return _coords;
    }
    std::size_t size() const noexcept {
      return _witness.size();
    }

    std::span<Element const> values(ElementId e) const {
      return {_values.data() + e * _coords.size(), _coords.size()};
    }
    Element value(ElementId e, std::size_t coordinate) const {
      return _values[e * _coords.size() + coordinate];
    }
    // A smallest term (by node count) whose value vector is that of e.
    Term const& witness(ElementId e) const {
      return _witness[e];
    }
    FiniteAlgebra const& generator_at(std::size_t coordinate) const {
      return _vp.generators()[_coords[coordinate].generator];
    }

    std::optional<ElementId> find(std::span<Element const> values) const;

    // Number of new elements whose smallest term has 1, 2, 3, ... nodes.
    std::vector<std::size_t> const& layers() const noexcept {
      return _layers;
    }

    // Pointwise operation on elements.
    ElementId apply(std::size_t symbol, std::span<ElementId const> args) const;

    // The free algebra as an operation-table algebra; throws CapExceeded if
    // the tables would exceed `entry_cap` entries in total.
    FiniteAlgebra as_algebra(std::size_t entry_cap = 1u << 22) const;

   private:
    friend class FreeAlgebraBuilder;

    struct VectorHash {
      std::size_t operator()(std::vector<Element> const& v) const noexcept;
    };

    FreeAlgebra(VarietyPresentation vp, VariableSet vars, std::vector<Coordinate> coords)
        : _vp(std::move(vp)), _vars(std::move(vars)), _coords(std::move(coords)) {}

    VarietyPresentation                                        _vp;
    VariableSet                                                _vars;
    std::vector<Coordinate>                                    _coords;
    std::vector<Element>                                       _values;
    std::vector<Term>                                          _witness;
    std::vector<std::size_t>                                   _layers;
    std::unordered_map<std::vector<Element>, ElementId, VectorHash> _index;
  };

  // Closure of the m generator vectors under the pointwise operations. New
  // elements are discovered by increasing term size, and within a size by
  // symbol order and then lexicographic order of operand ids, so ids and
  // witnesses are canonical. Throws CapExceeded past opts.element_cap.
  FreeAlgebra build_free_algebra(VarietyPresentation const&  vp,
                                 std::size_t                 m,
                                 FreeAlgebraOptions const&   opts = {},
                                 std::optional<VariableSet>  vars = std::nullopt);

  std::vector<Element> evaluate_pointwise(FreeAlgebra const& fa, Term const& t);

  // The element denoted by a term over the free generators.
  ElementId element_of_term(FreeAlgebra const& fa, Term const& t);

  std::vector<std::size_t> separating_coordinates(FreeAlgebra const& fa,
                                                  ElementId          a,
                                                  ElementId          b);

  struct IdentityCheck {
    bool holds = true;
    // Generator index and assignment of the first failure.
    std::optional<std::pair<std::size_t, Assignment>> counterexample;
  };

  // Whether lhs = rhs holds identically in every generator, with both terms
  // over `variable_count` variables.
  IdentityCheck validate_identity(VarietyPresentation const& vp,
                                  Term const&                lhs,
                                  Term const&                rhs,
                                  std::size_t                variable_count);

  // Homomorphism from the free algebra into a subalgebra of a generator,
  // determined by where the free generators go.
  struct FreeHomomorphism {
    std::size_t          coordinate;  // coordinate realizing the assignment
    std::vector<Element> map;         // subalgebra label of each element
  };

  // `asg` gives subalgebra labels. Each element is mapped by evaluating its
  // witness in `target`, and the result is checked against the value at the
  // matching coordinate. Throws PreconditionError if asg is out of range.
  FreeHomomorphism induced_hom(FreeAlgebra const&       fa,
                               std::span<Element const> asg,
                               Subalgebra const&        target);

}  // namespace freeatom
