#pragma once

// Finite algebras given by operation tables, their subuniverses and
// congruences, homomorphisms between them, and presentations of a variety
// by finitely many finite generating algebras.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freeatom/terms.hpp"

namespace freeatom {

  class FiniteAlgebra {
   public:
    // Builds the algebra and throws Error unless validate_algebra would
    // report it valid.
    FiniteAlgebra(std::string                        name,
                  Signature                          sig,
                  std::size_t                        size,
                  std::vector<std::vector<Element>>  tables);

    // No validation; pass the result to validate_algebra.
    static FiniteAlgebra unchecked(std::string                       name,
                                   Signature                         sig,
                                   std::size_t                       size,
                                   std::vector<std::vector<Element>> tables);

    std::string const& name() const noexcept {
      return _name;
    }
    Signature const& signature() const noexcept {
      return _sig;
    }
    std::size_t size() const noexcept {
      return _size;
    }
    std::vector<Element> const& table(std::size_t symbol) const {
      return _tables[symbol];
    }
    std::vector<std::vector<Element>> const& tables() const noexcept {
      return _tables;
    }

    // Row-major position of an argument tuple in a table.
    std::size_t offset(std::span<Element const> args) const noexcept {
      std::size_t idx = 0;
      for (auto a : args) {
        idx = idx * _size + a;
      }
      return idx;
    }

    Element apply(std::size_t symbol, std::span<Element const> args) const {
      return _tables[symbol][offset(args)];
    }

   private:
    FiniteAlgebra() = default;

    std::string                       _name;
    Signature                         _sig;
    std::size_t                       _size = 0;
    std::vector<std::vector<Element>> _tables;
  };

  // Number of argument tuples of the given arity over n elements. Throws
  // CapExceeded if it does not fit in memory-sized integers.
  std::size_t tuple_count(std::size_t n, std::size_t arity);

  // Visits every tuple of `arity` elements of {0..n-1} in lexicographic order.
  template <typename F>
  void for_each_tuple(std::size_t n, std::size_t arity, F&& f) {
    std::vector<Element> tuple(arity, 0);
    if (n == 0 && arity > 0) {
      return;
    }
    while (true) {
      f(std::span<Element const>(tuple));
      std::size_t pos = arity;
      while (pos > 0) {
        --pos;
        if (++tuple[pos] < n) {
          break;
        }
        tuple[pos] = 0;
        if (pos == 0) {
          return;
        }
      }
      if (arity == 0) {
        return;
      }
    }
  }

  struct Violation {
    enum class Kind { totality, range, size } kind;
    std::size_t symbol;  // index into the signature
    std::size_t entry;   // table position, or entry count for totality
    std::string message;
  };

  struct ValidationReport {
    std::vector<Violation> violations;

    bool valid() const noexcept {
      return violations.empty();
    }
  };

  ValidationReport validate_algebra(FiniteAlgebra const& alg);

  struct SwitchingCheck {
    bool                               holds = true;
    std::optional<std::vector<Element>> counterexample;  // (x, y, u, v)
  };

  // Exhaustive check that `switching` (over four variables x, y, u, v) is
  // u when x = y and v otherwise.
  SwitchingCheck verify_switching_term(FiniteAlgebra const& alg,
                                       Term const&          switching);

  // Least subuniverse containing `seed`, sorted ascending.
  std::vector<Element> subalgebra_closure(FiniteAlgebra const&     alg,
                                          std::span<Element const> seed);

  // Every nonempty subuniverse, ordered by size and then lexicographically.
  // Closures of all subsets are taken when size <= subset_cap; above it only
  // closures of singletons and pairs (plus the empty seed) are used.
  std::vector<std::vector<Element>> all_subalgebras(FiniteAlgebra const& alg,
                                                    std::size_t subset_cap = 12,
                                                    std::size_t size_cap   = 64);

  // A subuniverse of a generator, relabelled as an algebra on 0..k-1.
  // carrier[i] is the generator element labelled i.
  struct Subalgebra {
    std::size_t          generator;
    std::vector<Element> carrier;
    FiniteAlgebra        algebra;

    // Label of a generator element, which must lie in the carrier.
    Element label_of(Element generator_element) const;
  };

  Subalgebra restrict_to(FiniteAlgebra const&  alg,
                         std::size_t           generator_index,
                         std::vector<Element>  subuniverse);

  // A partition stored as the least element of each block, indexed by element.
  using Partition = std::vector<Element>;

  Partition principal_congruence(FiniteAlgebra const& alg, Element a, Element b);

  // All congruences, as canonical partitions in lexicographic order.
  std::vector<Partition> enumerate_congruences(FiniteAlgebra const& alg,
                                               std::size_t          cap = 8);

  bool isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b);

  // Map between finite algebras that commutes with every operation.
  class Homomorphism {
   public:
    // Exhaustive check on construction; throws PreconditionError if the map
    // is out of range or fails to commute.
    Homomorphism(FiniteAlgebra const& source,
                 FiniteAlgebra const& target,
                 std::vector<Element> map);

    std::vector<Element> const& map() const noexcept {
      return _map;
    }
    Element operator()(Element a) const {
      return _map[a];
    }
    bool injective() const;
    bool surjective() const;

   private:
    std::size_t          _target_size;
    std::vector<Element> _map;
  };

  // First operation entry on which `map` fails to commute, or nullopt.
  std::optional<std::string> homomorphism_failure(FiniteAlgebra const&     source,
                                                  FiniteAlgebra const&     target,
                                                  std::span<Element const> map);

  class VarietyPresentation {
   public:
    // Throws SwitchingTermError if the switch fails on some generator, and
    // Error if generators disagree on the signature or have fewer than two
    // elements.
    VarietyPresentation(std::vector<FiniteAlgebra> generators,
                        Term                       switching,
                        VariableSet                switch_vars = default_switch_vars());

    static VariableSet default_switch_vars() {
      return VariableSet({"x", "y", "u", "v"});
    }

    Signature const& signature() const noexcept {
      return _generators.front().signature();
    }
    std::vector<FiniteAlgebra> const& generators() const noexcept {
      return _generators;
    }
    Term const& switching() const noexcept {
      return _switch;
    }
    VariableSet const& switch_vars() const noexcept {
      return _switch_vars;
    }
    Term const& discriminator() const noexcept {
      return _discriminator;
    }

    // switch(p, q, u, w) with the switching term's variables replaced.
    Term apply_switch(Term const& p, Term const& q, Term const& u, Term const& w) const;
    // t(p, q, r) for the derived ternary discriminator.
    Term apply_discriminator(Term const& p, Term const& q, Term const& r) const;

   private:
    std::vector<FiniteAlgebra> _generators;
    Term                       _switch;
    VariableSet                _switch_vars;
    Term                       _discriminator;
  };

  struct InventoryOptions {
    bool        dedup_isomorphic = false;
    std::size_t subset_cap       = 12;
    std::size_t size_cap         = 64;
  };

  // All nonempty subuniverses of all generators, generator-major. These are
  // the subdirectly irreducible members used as homomorphic targets.
  std::vector<Subalgebra> si_inventory(VarietyPresentation const& vp,
                                       InventoryOptions const&    opts = {});

}  // namespace freeatom
