#include <doctest.h>

#include "freeatom/cover_synthesis.hpp"
#include "helpers.hpp"

using namespace freeatom;

namespace {

  // Pointwise comparison of value vectors under a per-generator order.
  template <typename Le>
  Relation pointwise(FreeAlgebra const& fa, Le le) {
    Relation rel(fa.size());
    for (ElementId a = 0; a < fa.size(); ++a) {
      for (ElementId b = 0; b < fa.size(); ++b) {
        bool ok = true;
        for (std::size_t j = 0; j < fa.coordinates().size(); ++j) {
          ok = ok && le(fa.value(a, j), fa.value(b, j));
        }
        rel.set(a, b, ok);
      }
    }
    return rel;
  }

  std::size_t strict_count(Relation const& rel) {
    std::size_t n = 0;
    for (std::size_t a = 0; a < rel.size(); ++a) {
      for (std::size_t b = 0; b < rel.size(); ++b) {
        n += strictly_less(rel, a, b) ? 1 : 0;
      }
    }
    return n;
  }

  // Chain 0 < 1 < ... < n-1.
  Relation chain(std::size_t n) {
    Relation rel(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        rel.set(a, b);
      }
    }
    return rel;
  }

}  // namespace

TEST_CASE("Boolean natural order on the free algebra is pointwise inclusion") {
  auto const fa   = testing::free_on("B2", 2);
  auto const spec = boolean_natural_order(fa.signature(), "and");
  auto const rel  = relation_on(spec, fa);
  CHECK(rel == pointwise(fa, [](Element a, Element b) { return a <= b; }));
  CHECK(verify_preorder(rel).is_preorder());
  CHECK_FALSE(antisymmetry_failure(rel));
  // 3^4 comparable pairs in the power set of a 4-element set, minus the diagonal.
  CHECK(strict_count(rel) == 81 - 16);
  for (ElementId a = 0; a < fa.size(); ++a) {
    for (ElementId b = 0; b < fa.size(); ++b) {
      CHECK(holds(spec, fa, a, b) == rel(a, b));
    }
  }
}

TEST_CASE("relations on a finite algebra") {
  auto const& b2   = testing::fixture("B2").generators().front();
  auto const  spec = PreorderSpec::parse("(and x y)", "x", b2.signature());
  auto const  rel  = relation_on(spec, b2);
  CHECK(rel == chain(2));
  CHECK(holds(spec, b2, 0, 1));
  CHECK_FALSE(holds(spec, b2, 1, 0));
  CHECK_THROWS_AS((void)PreorderSpec::parse("(and x z)", "x", b2.signature()),
                  UnknownSymbolError);
}

TEST_CASE("linear order on D3min is pointwise") {
  auto const fa   = testing::free_on("D3min", 1);
  auto const spec = PreorderSpec::parse("(min x y)", "x", fa.signature());
  auto const rel  = relation_on(spec, fa);
  CHECK(rel == pointwise(fa, [](Element a, Element b) { return a <= b; }));
  CHECK(strict_count(rel) == 189);
}

TEST_CASE("collapsed relation is a pre-order but not antisymmetric") {
  auto const fa   = testing::free_on("D3min", 1);
  auto const spec = PreorderSpec::parse("(min (min x c1) (min y c1))", "(min x c1)",
                                        fa.signature());
  auto const rel  = relation_on(spec, fa);
  auto const le   = [](Element a, Element b) { return std::min<Element>(a, 1) <= std::min<Element>(b, 1); };
  CHECK(rel == pointwise(fa, le));
  CHECK(verify_preorder(rel).is_preorder());
  auto const anti = antisymmetry_failure(rel);
  REQUIRE(anti);
  CHECK(rel(anti->first, anti->second));
  CHECK(rel(anti->second, anti->first));
  CHECK(strict_count(rel) == 218);
}

TEST_CASE("non-preorders are reported with a witness") {
  Relation rel(3);
  rel.set(0, 0);
  rel.set(1, 1);
  auto const r1 = verify_preorder(rel);
  CHECK_FALSE(r1.reflexive);
  CHECK(r1.irreflexive_at == 2u);
  rel.set(2, 2);
  rel.set(0, 1);
  rel.set(1, 2);
  auto const r2 = verify_preorder(rel);
  CHECK(r2.reflexive);
  CHECK_FALSE(r2.transitive);
  CHECK(r2.intransitive_at == std::array<std::size_t, 3>{0, 1, 2});
}

TEST_CASE("covers in a chain and in a diamond") {
  auto const c = chain(5);
  CHECK(covers(c, 1, 2));
  CHECK_FALSE(covers(c, 1, 3));
  CHECK(covers_in_interval(c, 0, 4) == std::vector<std::size_t>{1});
  CHECK(find_cover_in_interval(c, 0, 4) == 1);
  CHECK_THROWS_AS((void)find_cover_in_interval(c, 3, 1), PreconditionError);

  Relation d(4);  // 0 < 1, 2 < 3
  for (std::size_t a = 0; a < 4; ++a) {
    d.set(a, a);
    d.set(0, a);
    d.set(a, 3);
  }
  CHECK(covers_in_interval(d, 0, 3) == std::vector<std::size_t>{1, 2});
  CHECK(covers_in_interval(d, 0, 2) == std::vector<std::size_t>{2});
  auto const report = is_atomic(d);
  CHECK(report.atomic);
  CHECK(report.strict_pairs == 5);
}

TEST_CASE("covers skip elements equivalent to the lower end") {
  Relation p(3);  // 0 ~ 1 < 2
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      p.set(a, b, b == 2 || a != 2);
    }
  }
  CHECK_FALSE(strictly_less(p, 0, 1));
  CHECK(covers(p, 0, 2));
  CHECK(covers_in_interval(p, 1, 2) == std::vector<std::size_t>{2});
  CHECK(is_atomic(p).strict_pairs == 2);
}

TEST_CASE("every fixture pre-order is atomic on the inventory members") {
  for (auto const& fx : load_manifest()) {
    auto const& vp = testing::fixture(fx.name);
    for (auto const& cfg : fx.configs) {
      for (auto const& o : cfg.orders) {
        auto const spec = PreorderSpec::parse(o.lhs, o.rhs, vp.signature());
        for (auto const& sub : si_inventory(vp)) {
          auto const rel = relation_on(spec, sub.algebra);
          CHECK(verify_preorder(rel).is_preorder());
          CHECK(is_atomic(rel).atomic);
        }
      }
    }
  }
}
