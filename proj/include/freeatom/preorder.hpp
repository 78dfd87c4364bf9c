#pragma once

// Equationally definable binary relations: x <= y iff lhs(x, y) = rhs(x, y).
// The order-theoretic queries work on a materialized relation matrix over
// any finite carrier.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "freeatom/free_algebra.hpp"

namespace freeatom {

  struct PreorderSpec {
    Term lhs;  // over the two relation variables x, y
    Term rhs;

    static VariableSet relation_vars() {
      return VariableSet({"x", "y"});
    }

    // Parses both sides over the relation variables; throws if either side
    // mentions anything else.
    static PreorderSpec parse(std::string_view  lhs,
                              std::string_view  rhs,
                              Signature const&  sig);
  };

  // Relation on {0..n-1} as a dense matrix.
  class Relation {
   public:
    explicit Relation(std::size_t n) : _n(n), _bits(n * n, 0) {}

    std::size_t size() const noexcept {
      return _n;
    }
    bool operator()(std::size_t a, std::size_t b) const {
      return _bits[a * _n + b] != 0;
    }
    void set(std::size_t a, std::size_t b, bool value = true) {
      _bits[a * _n + b] = value ? 1 : 0;
    }

    friend bool operator==(Relation const&, Relation const&) = default;

   private:
    std::size_t       _n;
    std::vector<char> _bits;
  };

  bool holds(PreorderSpec const& spec, FiniteAlgebra const& alg, Element a, Element b);

  // Equality of lhs(a, b) and rhs(a, b) as elements of the free algebra.
  bool holds(PreorderSpec const& spec, FreeAlgebra const& fa, ElementId a, ElementId b);

  Relation relation_on(PreorderSpec const& spec, FiniteAlgebra const& alg);

  // Computed coordinatewise from the relation on each generator.
  Relation relation_on(PreorderSpec const& spec, FreeAlgebra const& fa);

  struct PreorderReport {
    bool reflexive  = true;
    bool transitive = true;
    std::optional<std::size_t>                irreflexive_at;
    std::optional<std::array<std::size_t, 3>> intransitive_at;  // a<=b<=c, a!<=c

    bool is_preorder() const noexcept {
      return reflexive && transitive;
    }
  };

  PreorderReport verify_preorder(Relation const& rel);

  // First pair (a, b), a != b, related both ways; nullopt if antisymmetric.
  std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_failure(
      Relation const& rel);

  bool strictly_less(Relation const& rel, std::size_t a, std::size_t b);

  // c covers a: a < c and nothing lies strictly between.
  bool covers(Relation const& rel, std::size_t a, std::size_t c);

  // Every c with a < c <= b that covers a, ascending.
  std::vector<std::size_t> covers_in_interval(Relation const& rel,
                                              std::size_t     a,
                                              std::size_t     b);

  // Least-index cover of a in (a, b]; throws PreconditionError unless a < b.
  std::size_t find_cover_in_interval(Relation const& rel, std::size_t a, std::size_t b);

  struct AtomicityReport {
    bool                                               atomic       = true;
    std::size_t                                        strict_pairs = 0;
    std::optional<std::pair<std::size_t, std::size_t>> counterexample;
  };

  // For every a < b, some cover of a lies in (a, b].
  AtomicityReport is_atomic(Relation const& rel);

}  // namespace freeatom
