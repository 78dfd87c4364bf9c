#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "freeatom/algebra_io.hpp"
#include "freeatom/finite_algebra.hpp"
#include "helpers.hpp"

using namespace freeatom;

namespace {

  FiniteAlgebra const& b2() {
    return testing::fixture("B2").generators().front();
  }

  // Direct product of an algebra with itself, element (a, b) encoded as a*n+b.
  FiniteAlgebra square(FiniteAlgebra const& a) {
    auto const                        n = a.size();
    std::vector<std::vector<Element>> tables;
    for (std::size_t s = 0; s < a.signature().size(); ++s) {
      auto const           arity = a.signature()[s].arity;
      std::vector<Element> table;
      for_each_tuple(n * n, arity, [&](std::span<Element const> args) {
        std::vector<Element> left;
        std::vector<Element> right;
        for (auto v : args) {
          left.push_back(v / n);
          right.push_back(v % n);
        }
        table.push_back(static_cast<Element>(a.apply(s, left) * n + a.apply(s, right)));
      });
      tables.push_back(std::move(table));
    }
    return FiniteAlgebra(a.name() + "^2", a.signature(), n * n, std::move(tables));
  }

  bool closed(FiniteAlgebra const& alg, std::vector<Element> const& subset) {
    std::set<Element> s(subset.begin(), subset.end());
    bool              ok = true;
    for (std::size_t sym = 0; sym < alg.signature().size(); ++sym) {
      for_each_tuple(subset.size(), alg.signature()[sym].arity, [&](std::span<Element const> t) {
        std::vector<Element> args;
        for (auto i : t) {
          args.push_back(subset[i]);
        }
        ok = ok && s.count(alg.apply(sym, args)) == 1;
      });
    }
    return ok;
  }

  // Every partition of {0..n-1} compatible with the operations.
  std::size_t brute_congruence_count(FiniteAlgebra const& alg) {
    auto const           n = alg.size();
    std::size_t          count = 0;
    std::vector<Element> block(n, 0);
    // Restricted growth strings enumerate partitions.
    std::function<void(std::size_t, Element)> rec = [&](std::size_t i, Element max) {
      if (i == n) {
        bool ok = true;
        for (std::size_t s = 0; s < alg.signature().size() && ok; ++s) {
          auto const k = alg.signature()[s].arity;
          for_each_tuple(n, k, [&](std::span<Element const> a) {
            for_each_tuple(n, k, [&](std::span<Element const> b) {
              bool related = true;
              for (std::size_t j = 0; j < k; ++j) {
                related = related && block[a[j]] == block[b[j]];
              }
              if (related && block[alg.apply(s, a)] != block[alg.apply(s, b)]) {
                ok = false;
              }
            });
          });
        }
        count += ok ? 1 : 0;
        return;
      }
      for (Element b = 0; b <= max + 1; ++b) {
        block[i] = b;
        rec(i + 1, std::max(max, b));
      }
    };
    block[0] = 0;
    rec(1, 0);
    return count;
  }

}  // namespace

TEST_CASE("fixtures validate and their switching terms hold") {
  for (auto const* name : {"B2", "D3", "D3min", "S2"}) {
    auto const& vp = testing::fixture(name);
    for (auto const& g : vp.generators()) {
      CHECK(validate_algebra(g).valid());
      CHECK(verify_switching_term(g, vp.switching()).holds);
    }
  }
}

TEST_CASE("a broken switching term is rejected with a counterexample") {
  auto const& g    = testing::fixture("D3").generators().front();
  auto const  vars = VarietyPresentation::default_switch_vars();
  auto const  bad  = parse_term("(s x y v u)", g.signature(), vars);
  auto const  chk  = verify_switching_term(g, bad);
  REQUIRE_FALSE(chk.holds);
  REQUIRE(chk.counterexample);
  auto const& c        = *chk.counterexample;
  Element const want   = c[0] == c[1] ? c[2] : c[3];
  CHECK(evaluate(bad, g, std::span<Element const>(c)) != want);
  CHECK_THROWS_AS(VarietyPresentation({g}, bad), SwitchingTermError);
}

TEST_CASE("validation reports range, size and totality violations") {
  Signature const sig({{"f", 1}, {"c", 0}});
  auto const range = validate_algebra(FiniteAlgebra::unchecked("A", sig, 2, {{0, 2}, {0}}));
  REQUIRE(range.violations.size() == 1);
  CHECK(range.violations[0].kind == Violation::Kind::range);
  CHECK(range.violations[0].entry == 1);
  auto const total = validate_algebra(FiniteAlgebra::unchecked("A", sig, 2, {{0}, {0}}));
  REQUIRE_FALSE(total.valid());
  CHECK(total.violations[0].kind == Violation::Kind::totality);
  auto const size = validate_algebra(FiniteAlgebra::unchecked("A", sig, 0, {{}, {}}));
  CHECK_FALSE(size.valid());
  CHECK_THROWS_AS(FiniteAlgebra("A", sig, 2, {{0, 5}, {0}}), Error);
}

TEST_CASE("tuple enumeration is lexicographic and counted exactly") {
  std::vector<std::vector<Element>> seen;
  for_each_tuple(3, 2, [&](std::span<Element const> t) { seen.emplace_back(t.begin(), t.end()); });
  REQUIRE(seen.size() == 9);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(tuple_count(3, 4) == 81);
  std::size_t nullary = 0;
  for_each_tuple(5, 0, [&](std::span<Element const>) { ++nullary; });
  CHECK(nullary == 1);
  CHECK_THROWS_AS((void)tuple_count(1000, 40), CapExceeded);
}

TEST_CASE("subuniverse enumeration matches a brute-force closedness check") {
  for (auto const* name : {"B2", "D3", "D3min", "S2"}) {
    auto const& alg = testing::fixture(name).generators().front();
    std::set<std::vector<Element>> expected;
    for (std::size_t mask = 1; mask < (1u << alg.size()); ++mask) {
      std::vector<Element> subset;
      for (Element e = 0; e < alg.size(); ++e) {
        if (mask & (1u << e)) {
          subset.push_back(e);
        }
      }
      if (closed(alg, subset)) {
        expected.insert(subset);
      }
    }
    auto const got = all_subalgebras(alg);
    CHECK(std::set<std::vector<Element>>(got.begin(), got.end()) == expected);
    for (std::size_t i = 1; i < got.size(); ++i) {
      CHECK(got[i - 1].size() <= got[i].size());
    }
  }
}

TEST_CASE("closure is closed, contains its seed and is idempotent") {
  auto const& alg = testing::fixture("D3min").generators().front();
  for (Element a = 0; a < alg.size(); ++a) {
    std::vector<Element> seed{a};
    auto const           cl = subalgebra_closure(alg, seed);
    CHECK(closed(alg, cl));
    CHECK(std::binary_search(cl.begin(), cl.end(), a));
    CHECK(subalgebra_closure(alg, cl) == cl);
  }
  auto const& s2 = testing::fixture("S2").generators().front();
  std::vector<Element> zero{0};
  CHECK(subalgebra_closure(s2, zero) == std::vector<Element>{0});
}

TEST_CASE("congruence counts agree with partition brute force") {
  auto const sq = square(b2());
  for (auto const* alg : {&b2(), &testing::fixture("D3").generators().front(),
                          &testing::fixture("S2").generators().front(), &sq}) {
    CHECK(enumerate_congruences(*alg).size() == brute_congruence_count(*alg));
  }
  CHECK(enumerate_congruences(b2()).size() == 2);
  CHECK(enumerate_congruences(sq).size() == 4);
  auto const theta = principal_congruence(sq, 0, 1);
  CHECK(theta == Partition{0, 0, 2, 2});
}

TEST_CASE("every inventory member of size at least two is simple") {
  for (auto const* name : {"B2", "D3", "D3min", "S2"}) {
    for (auto const& sub : si_inventory(testing::fixture(name))) {
      if (sub.algebra.size() >= 2) {
        CHECK(enumerate_congruences(sub.algebra).size() == 2);
      }
      CHECK(closed(testing::fixture(name).generators()[sub.generator], sub.carrier));
    }
  }
  auto const s2 = si_inventory(testing::fixture("S2"));
  REQUIRE(s2.size() == 3);
  CHECK(s2[0].carrier.size() == 1);
}

TEST_CASE("homomorphisms and isomorphism") {
  auto const sq = square(b2());
  Homomorphism proj(sq, b2(), {0, 0, 1, 1});
  CHECK(proj.surjective());
  CHECK_FALSE(proj.injective());
  CHECK(homomorphism_failure(sq, b2(), std::vector<Element>{0, 1, 1, 0}).has_value());
  CHECK_THROWS_AS(Homomorphism(sq, b2(), {0, 1, 1, 0}), PreconditionError);
  Homomorphism diag(b2(), sq, {0, 3});
  CHECK(diag.injective());
  auto flipped = FiniteAlgebra("B2'", b2().signature(), 2,
                               {{0, 1, 1, 1}, {0, 0, 0, 1}, {1, 0}, {1}, {0}});
  CHECK(isomorphic(b2(), flipped));
  CHECK_FALSE(isomorphic(b2(), testing::fixture("S2").generators().front()));
}

TEST_CASE("algebra files round-trip and report line numbers") {
  auto const text = write_algebra(b2());
  auto const back = load_algebras(text);
  REQUIRE(back.size() == 1);
  CHECK(back[0].tables() == b2().tables());
  CHECK(back[0].name() == "B2");

  std::string const bad = "algebra A\nsize 2\nop f 1\n0 1\nop g 2\n0 0\n0 7\n";
  auto const        parsed = parse_algebra_text(bad);
  auto const        diags  = diagnose(parsed.at(0));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].line == 7);
  CHECK(diags[0].message.rfind("line 7:", 0) == 0);
  try {
    (void)load_algebras(bad);
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.position() == 7);
  }
  auto const commented = load_algebras("# head\nalgebra A  # name\nsize 2\nop f 1 # unary\n1 0 # swap\n");
  REQUIRE(commented.size() == 1);
  CHECK(commented[0].table(0) == std::vector<Element>{1, 0});
  CHECK_THROWS_AS((void)parse_algebra_text("algebra A\nsize x\n"), ParseError);
  CHECK_THROWS_AS((void)parse_algebra_text("size 2\n"), ParseError);
}

TEST_CASE("presentations conform generator signatures") {
  auto const& d3 = testing::fixture("D3").generators().front();
  CHECK_THROWS_AS(VarietyPresentation({b2()}, testing::fixture("D3").switching()), Error);
  VarietyPresentation vp({d3, d3}, testing::fixture("D3").switching());
  CHECK(vp.generators().size() == 2);
}
