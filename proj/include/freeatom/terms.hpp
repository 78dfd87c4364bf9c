#pragma once

// Signatures, variable sets and terms.
//
// A Term is stored as a flat postfix sequence of nodes: every subterm is a
// contiguous block ending at its root, and the whole term ends at the last
// node. Construction, evaluation, printing and destruction are all iterative,
// so terms may be arbitrarily deep.

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freeatom/errors.hpp"

namespace freeatom {

  using Element = std::uint32_t;
  using Assignment = std::vector<Element>;

  struct Symbol {
    std::string name;
    std::size_t arity;

    friend bool operator==(Symbol const&, Symbol const&) = default;
  };

  class Signature {
   public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    // Appends a symbol and returns its index; throws if the name is taken.
    std::size_t add(std::string name, std::size_t arity);

    std::optional<std::size_t> find(std::string_view name) const;

    Symbol const& operator[](std::size_t i) const {
      return _symbols[i];
    }
    std::size_t size() const noexcept {
      return _symbols.size();
    }
    std::vector<Symbol> const& symbols() const noexcept {
      return _symbols;
    }
    std::size_t max_arity() const noexcept;

    friend bool operator==(Signature const&, Signature const&) = default;

   private:
    std::vector<Symbol> _symbols;
  };

  class VariableSet {
   public:
    VariableSet() = default;
    explicit VariableSet(std::vector<std::string> names);

    // Default names for m free generators: x, y, z for m <= 3, else x0, x1, ...
    static VariableSet standard(std::size_t m);

    std::optional<std::size_t> find(std::string_view name) const;

    std::string const& operator[](std::size_t i) const {
      return _names[i];
    }
    std::size_t size() const noexcept {
      return _names.size();
    }
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    friend bool operator==(VariableSet const&, VariableSet const&) = default;

   private:
    std::vector<std::string> _names;
  };

  struct TermNode {
    enum class Kind : std::uint8_t { variable, application };

    Kind          kind;
    std::uint32_t index;  // variable index or symbol index
    std::uint32_t arity;  // always 0 for variables

    friend auto operator<=>(TermNode const&, TermNode const&) = default;
  };

  class Term {
   public:
    // A term must have at least one node; default construction gives x0.
    Term() : _nodes{{TermNode::Kind::variable, 0, 0}} {}

    static Term variable(std::size_t index);
    // Application without a signature check; `children.size()` is the arity.
    static Term apply(std::size_t symbol, std::span<Term const> children);
    static Term apply(std::size_t symbol, std::initializer_list<Term> children);
    // Takes ownership of a postfix node sequence; throws if it is not a
    // single well-formed term.
    static Term from_postfix(std::vector<TermNode> nodes);

    std::vector<TermNode> const& nodes() const noexcept {
      return _nodes;
    }
    TermNode const& root() const noexcept {
      return _nodes.back();
    }
    std::size_t size() const noexcept {
      return _nodes.size();
    }
    bool is_variable() const noexcept {
      return root().kind == TermNode::Kind::variable;
    }

    // Immediate subterms of the root, left to right.
    std::vector<Term> children() const;
    // One more than the largest variable index used, 0 if none.
    std::size_t variable_bound() const noexcept;
    std::size_t depth() const;

    friend bool operator==(Term const&, Term const&) = default;
    friend auto operator<=>(Term const&, Term const&) = default;

   private:
    explicit Term(std::vector<TermNode> nodes) : _nodes(std::move(nodes)) {}
    std::vector<TermNode> _nodes;
  };

  // Application with the arity checked against `sig`.
  Term make_application(Signature const&         sig,
                        std::size_t              symbol,
                        std::span<Term const>    children);
  Term make_application(Signature const&           sig,
                        std::string_view           symbol,
                        std::initializer_list<Term> children);

  // Replace variable i by replacement[i]. Variables without a replacement
  // are an error.
  Term substitute(Term const& t, std::span<Term const> replacement);

  // TERM := IDENT | "(" IDENT TERM* ")". Constants may be written bare or
  // parenthesised. Throws ParseError (syntax), UnknownSymbolError or
  // ArityError, all carrying the byte offset of the problem.
  Term parse_term(std::string_view    text,
                  Signature const&    sig,
                  VariableSet const&  vars);

  // A whitespace-separated sequence of terms, e.g. the two sides of an
  // equation written on one line.
  std::vector<Term> parse_terms(std::string_view   text,
                                Signature const&   sig,
                                VariableSet const& vars);

  // Fully parenthesised prefix form; constants are printed bare.
  std::string print_term(Term const&        t,
                         Signature const&   sig,
                         VariableSet const& vars);

  template <typename A>
  concept OperationTables = requires(A const&                 a,
                                     std::size_t              symbol,
                                     std::span<Element const> args) {
    { a.apply(symbol, args) } -> std::convertible_to<Element>;
  };

  // Value of the term function of `t` in `alg` at `asg`.
  template <OperationTables A>
  Element evaluate(Term const& t, A const& alg, std::span<Element const> asg) {
    std::vector<Element> stack;
    stack.reserve(16);
    for (auto const& node : t.nodes()) {
      if (node.kind == TermNode::Kind::variable) {
        if (node.index >= asg.size()) {
          throw EvaluationError("unassigned variable index "
                                + std::to_string(node.index));
        }
        stack.push_back(asg[node.index]);
      } else {
        auto const first = stack.size() - node.arity;
        auto const value = alg.apply(
            node.index, std::span<Element const>(stack.data() + first, node.arity));
        stack.resize(first);
        stack.push_back(value);
      }
    }
    return stack.back();
  }

  // The ternary discriminator t(x, y, z) := switch(x, y, z, x). `switch_vars`
  // is the variable set the switching term is written over; it must have
  // exactly four variables.
  Term derive_discriminator(Term const& switching, VariableSet const& switch_vars);

}  // namespace freeatom
