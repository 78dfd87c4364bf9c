#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "freeatom/free_algebra.hpp"
#include "helpers.hpp"

using namespace freeatom;

namespace {

  using Vec = std::vector<Element>;

  // Least term size reaching each value vector, by combining the vectors
  // reachable at every split of the remaining size among the operands.
  std::map<Vec, std::size_t> minimal_sizes(FreeAlgebra const& fa, std::size_t max_size) {
    auto const&                         coords = fa.coordinates();
    auto const&                         sig    = fa.signature();
    std::vector<std::set<Vec>>          by_size(max_size + 1);
    std::map<Vec, std::size_t>          best;
    for (std::size_t v = 0; v < fa.variables().size(); ++v) {
      Vec vec;
      for (auto const& c : coords) {
        vec.push_back(c.assignment[v]);
      }
      by_size[1].insert(vec);
    }
    for (std::size_t size = 1; size <= max_size; ++size) {
      for (std::size_t s = 0; s < sig.size(); ++s) {
        auto const k = sig[s].arity;
        if (k == 0) {
          if (size == 1) {
            Vec vec;
            for (auto const& c : coords) {
              vec.push_back(fa.presentation().generators()[c.generator].table(s)[0]);
            }
            by_size[1].insert(vec);
          }
          continue;
        }
        if (size < k + 1) {
          continue;
        }
        // Distribute size - 1 among k operands, each at least 1.
        std::vector<std::size_t> parts(k, 1);
        parts.back() = size - k;
        std::function<void(std::size_t, std::size_t)> split = [&](std::size_t i, std::size_t left) {
          if (i + 1 == k) {
            parts[i] = left;
            std::vector<std::vector<Vec>> pools;
            for (auto p : parts) {
              pools.emplace_back(by_size[p].begin(), by_size[p].end());
            }
            std::vector<std::size_t> idx(k, 0);
            bool                     any = true;
            for (auto const& pool : pools) {
              any = any && !pool.empty();
            }
            while (any) {
              Vec out(coords.size());
              for (std::size_t j = 0; j < coords.size(); ++j) {
                Vec args;
                for (std::size_t a = 0; a < k; ++a) {
                  args.push_back(pools[a][idx[a]][j]);
                }
                out[j] = fa.generator_at(j).apply(s, args);
              }
              by_size[size].insert(out);
              std::size_t pos = k;
              while (pos > 0) {
                --pos;
                if (++idx[pos] < pools[pos].size()) {
                  break;
                }
                idx[pos] = 0;
                if (pos == 0) {
                  any = false;
                }
              }
            }
            return;
          }
          for (std::size_t p = 1; p + (k - i - 1) <= left; ++p) {
            parts[i] = p;
            split(i + 1, left - p);
          }
        };
        split(0, size - 1);
      }
      for (auto const& v : by_size[size]) {
        best.emplace(v, size);
      }
    }
    return best;
  }

}  // namespace

TEST_CASE("free algebra sizes") {
  CHECK(testing::free_on("B2", 1).size() == 4);
  CHECK(testing::free_on("B2", 2).size() == 16);
  CHECK(testing::free_on("D3", 1).size() == 27);
  CHECK(testing::free_on("D3min", 1).size() == 27);
  CHECK(testing::free_on("S2", 1).size() == 1);
  CHECK(testing::free_on("S2", 2).size() == 2);
  for (auto const& fx : load_manifest()) {
    for (auto const& cfg : fx.configs) {
      CHECK(testing::free_on(fx.name, cfg.m).size() == cfg.free_size);
    }
  }
}

TEST_CASE("B2 free algebra is the full function space") {
  auto const fa = testing::free_on("B2", 2);
  // 2^(2^2) Boolean functions of two variables, one per value vector.
  std::set<Vec> vectors;
  for (ElementId e = 0; e < fa.size(); ++e) {
    vectors.emplace(fa.values(e).begin(), fa.values(e).end());
  }
  CHECK(vectors.size() == 16);
}

TEST_CASE("witnesses denote their elements and are of least size") {
  for (auto const& [name, m] : std::vector<std::pair<std::string, std::size_t>>{
           {"B2", 1}, {"B2", 2}, {"D3", 1}, {"D3min", 1}, {"S2", 2}}) {
    auto const fa   = testing::free_on(name, m);
    std::size_t max = 0;
    for (ElementId e = 0; e < fa.size(); ++e) {
      auto const& w = fa.witness(e);
      CHECK(evaluate_pointwise(fa, w) == Vec(fa.values(e).begin(), fa.values(e).end()));
      CHECK(element_of_term(fa, w) == e);
      max = std::max(max, w.size());
    }
    auto const best = minimal_sizes(fa, max);
    CHECK(best.size() == fa.size());
    for (ElementId e = 0; e < fa.size(); ++e) {
      Vec const v(fa.values(e).begin(), fa.values(e).end());
      REQUIRE(best.count(v) == 1);
      CHECK(best.at(v) == fa.witness(e).size());
    }
  }
}

TEST_CASE("element ids follow witness size") {
  auto const fa = testing::free_on("B2", 2);
  for (ElementId e = 1; e < fa.size(); ++e) {
    CHECK(fa.witness(e - 1).size() <= fa.witness(e).size());
  }
  std::size_t total = 0;
  for (auto n : fa.layers()) {
    total += n;
  }
  CHECK(total == fa.size());
  CHECK(fa.witness(0) == Term::variable(0));
  CHECK(fa.witness(1) == Term::variable(1));
}

TEST_CASE("closure is idempotent and pointwise operations stay inside") {
  auto const fa = testing::free_on("D3min", 1);
  auto const& sig = fa.signature();
  for (std::size_t s = 0; s < sig.size(); ++s) {
    if (sig[s].arity != 2) {
      continue;
    }
    for (ElementId a = 0; a < fa.size(); ++a) {
      for (ElementId b = 0; b < fa.size(); ++b) {
        std::vector<ElementId> args{a, b};
        auto const             r = fa.apply(s, args);
        CHECK(r < fa.size());
      }
    }
  }
}

TEST_CASE("coordinate projections are homomorphisms of the materialized algebra") {
  auto const fa  = testing::free_on("B2", 2);
  auto const alg = fa.as_algebra();
  CHECK(validate_algebra(alg).valid());
  for (std::size_t j = 0; j < fa.coordinates().size(); ++j) {
    std::vector<Element> map;
    for (ElementId e = 0; e < fa.size(); ++e) {
      map.push_back(fa.value(e, j));
    }
    CHECK_FALSE(homomorphism_failure(alg, fa.generator_at(j), map).has_value());
  }
}

TEST_CASE("freeness: every assignment into an inventory member extends") {
  auto const fa  = testing::free_on("D3min", 1);
  auto const inv = si_inventory(fa.presentation());
  auto const alg = fa.as_algebra();
  for (auto const& sub : inv) {
    for (Element a = 0; a < sub.algebra.size(); ++a) {
      std::vector<Element> asg{a};
      auto const           h = induced_hom(fa, asg, sub);
      CHECK_FALSE(homomorphism_failure(alg, sub.algebra, h.map).has_value());
      CHECK(h.map[0] == a);
    }
  }
}

TEST_CASE("identities are checked on every generator") {
  auto const& vp   = testing::fixture("B2");
  auto const  vars = VariableSet::standard(2);
  auto const  lhs  = parse_term("(and x y)", vp.signature(), vars);
  auto const  rhs  = parse_term("(and y x)", vp.signature(), vars);
  CHECK(validate_identity(vp, lhs, rhs, 2).holds);
  auto const bad = validate_identity(vp, lhs, parse_term("x", vp.signature(), vars), 2);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.counterexample);
  CHECK(bad.counterexample->second == Assignment{1, 0});
}

TEST_CASE("free algebra errors") {
  auto const& vp = testing::fixture("D3");
  CHECK_THROWS_AS((void)build_free_algebra(vp, 0), PreconditionError);
  try {
    (void)build_free_algebra(vp, 2, {50});
    FAIL("expected the cap to be hit");
  } catch (CapExceeded const& e) {
    CHECK(e.reached() >= 50);
  }
  CHECK_THROWS_AS((void)build_free_algebra(vp, 1, {}, VariableSet({"s"})), PreconditionError);
  auto const fa = build_free_algebra(vp, 1, {}, VariableSet({"a"}));
  CHECK(fa.variables()[0] == "a");
  CHECK(separating_coordinates(fa, 0, 0).empty());
}
