#include <doctest.h>

#include <random>

#include "freeatom/terms.hpp"
#include "helpers.hpp"

using namespace freeatom;

namespace {

  Signature boolean_sig() {
    return Signature({{"and", 2}, {"or", 2}, {"not", 1}, {"zero", 0}, {"one", 0}});
  }

  Term random_term(std::mt19937& rng, Signature const& sig, std::size_t vars, int depth) {
    std::uniform_int_distribution<std::size_t> pick(0, sig.size() + vars - 1);
    auto const k = pick(rng);
    if (depth == 0 || k < vars) {
      return Term::variable(k % vars);
    }
    auto const          s = k - vars;
    std::vector<Term>   kids;
    for (std::size_t i = 0; i < sig[s].arity; ++i) {
      kids.push_back(random_term(rng, sig, vars, depth - 1));
    }
    return Term::apply(s, kids);
  }

}  // namespace

TEST_CASE("print and parse round-trip on seeded random terms") {
  auto const        sig  = boolean_sig();
  auto const        vars = VariableSet::standard(3);
  std::mt19937      rng(20261018);
  for (int i = 0; i < 2000; ++i) {
    auto const t    = random_term(rng, sig, 3, 6);
    auto const text = print_term(t, sig, vars);
    CHECK(parse_term(text, sig, vars) == t);
  }
}

TEST_CASE("constants parse bare or parenthesised") {
  auto const sig  = boolean_sig();
  auto const vars = VariableSet::standard(1);
  CHECK(parse_term("zero", sig, vars) == parse_term("(zero)", sig, vars));
  CHECK(print_term(parse_term("(one)", sig, vars), sig, vars) == "one");
}

TEST_CASE("parse errors carry byte offsets") {
  auto const sig  = boolean_sig();
  auto const vars = VariableSet::standard(2);
  SUBCASE("unknown symbol") {
    try {
      (void)parse_term("(and x (nand x y))", sig, vars);
      FAIL("expected an error");
    } catch (UnknownSymbolError const& e) {
      CHECK(e.position() == 8);
    }
  }
  SUBCASE("arity") {
    CHECK_THROWS_AS((void)parse_term("(not x y)", sig, vars), ArityError);
    CHECK_THROWS_AS((void)parse_term("(and x)", sig, vars), ArityError);
  }
  SUBCASE("syntax") {
    CHECK_THROWS_AS((void)parse_term("(and x y", sig, vars), ParseError);
    CHECK_THROWS_AS((void)parse_term("x y", sig, vars), ParseError);
    CHECK_THROWS_AS((void)parse_term("", sig, vars), ParseError);
    CHECK_THROWS_AS((void)parse_term("w", sig, vars), UnknownSymbolError);
  }
}

TEST_CASE("parse_terms splits top-level terms") {
  auto const sig   = boolean_sig();
  auto const vars  = VariableSet::standard(2);
  auto const terms = parse_terms("(and x y)  x (not (or y one)) zero", sig, vars);
  REQUIRE(terms.size() == 4);
  CHECK(print_term(terms[2], sig, vars) == "(not (or y one))");
  CHECK_THROWS_AS((void)parse_terms("x )", sig, vars), ParseError);
}

TEST_CASE("a million-node term is handled without recursion") {
  auto const  sig  = boolean_sig();
  auto const  vars = VariableSet::standard(1);
  std::size_t const n = 999999;
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    text += "(not ";
  }
  text += "x";
  text += std::string(n, ')');
  auto const t = parse_term(text, sig, vars);
  CHECK(t.size() == n + 1);
  CHECK(t.depth() == n);
  CHECK(print_term(t, sig, vars) == text);
  auto const& b2 = testing::fixture("B2").generators().front();
  Element     one = 1;
  CHECK(evaluate(t, b2, std::span<Element const>(&one, 1)) == 0);
  auto const copy = t;
  CHECK(copy == t);
}

TEST_CASE("substitution and children") {
  auto const sig  = boolean_sig();
  auto const vars = VariableSet::standard(2);
  auto const t    = parse_term("(and x (not y))", sig, vars);
  std::vector<Term> repl{parse_term("one", sig, vars), parse_term("(or x y)", sig, vars)};
  CHECK(print_term(substitute(t, repl), sig, vars) == "(and one (not (or x y)))");
  auto const kids = t.children();
  REQUIRE(kids.size() == 2);
  CHECK(print_term(kids[1], sig, vars) == "(not y)");
  CHECK(t.variable_bound() == 2);
  CHECK(make_application(sig, "and", {kids[0], kids[1]}) == t);
  CHECK_THROWS_AS((void)make_application(sig, "not", {kids[0], kids[1]}), ArityError);
}

TEST_CASE("derived discriminator agrees with the ternary discriminator") {
  for (auto const* name : {"B2", "D3", "D3min", "S2"}) {
    auto const& vp = testing::fixture(name);
    for (auto const& g : vp.generators()) {
      for_each_tuple(g.size(), 3, [&](std::span<Element const> t) {
        Element const expected = t[0] == t[1] ? t[2] : t[0];
        CHECK(evaluate(vp.discriminator(), g, t) == expected);
      });
    }
  }
}

TEST_CASE("standard variable names") {
  CHECK(VariableSet::standard(2).names() == std::vector<std::string>{"x", "y"});
  CHECK(VariableSet::standard(4).names()
        == std::vector<std::string>{"x0", "x1", "x2", "x3"});
}
