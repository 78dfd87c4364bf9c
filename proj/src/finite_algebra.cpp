#include "freeatom/finite_algebra.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace freeatom {

  std::size_t tuple_count(std::size_t n, std::size_t arity) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (n != 0 && result > std::numeric_limits<std::uint32_t>::max() / n) {
        throw CapExceeded("operation table too large", result);
      }
      result *= n;
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteAlgebra
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra FiniteAlgebra::unchecked(std::string                       name,
                                         Signature                         sig,
                                         std::size_t                       size,
                                         std::vector<std::vector<Element>> tables) {
    FiniteAlgebra alg;
    alg._name   = std::move(name);
    alg._sig    = std::move(sig);
    alg._size   = size;
    alg._tables = std::move(tables);
    return alg;
  }

  FiniteAlgebra::FiniteAlgebra(std::string                       name,
                               Signature                         sig,
                               std::size_t                       size,
                               std::vector<std::vector<Element>> tables)
      : _name(std::move(name)),
        _sig(std::move(sig)),
        _size(size),
        _tables(std::move(tables)) {
    auto report = validate_algebra(*this);
    if (!report.valid()) {
      throw Error("algebra '" + _name + "': " + report.violations.front().message);
    }
  }

  ValidationReport validate_algebra(FiniteAlgebra const& alg) {
    ValidationReport report;
    auto const&      sig = alg.signature();
    if (alg.size() == 0) {
      report.violations.push_back(
          {Violation::Kind::size, 0, 0, "carrier must be nonempty"});
    }
    if (alg.tables().size() != sig.size()) {
      report.violations.push_back({Violation::Kind::totality,
                                   alg.tables().size(),
                                   alg.tables().size(),
                                   "expected " + std::to_string(sig.size())
                                       + " tables, found "
                                       + std::to_string(alg.tables().size())});
      return report;
    }
    for (std::size_t s = 0; s < sig.size(); ++s) {
      auto const& table    = alg.table(s);
      auto const  expected = tuple_count(alg.size(), sig[s].arity);
      if (table.size() != expected) {
        report.violations.push_back(
            {Violation::Kind::totality,
             s,
             table.size(),
             "op " + sig[s].name + ": expected " + std::to_string(expected)
                 + " entries, found " + std::to_string(table.size())});
      }
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] >= alg.size()) {
          report.violations.push_back(
              {Violation::Kind::range,
               s,
               i,
               "op " + sig[s].name + ": entry " + std::to_string(i) + " is "
                   + std::to_string(table[i]) + ", not below size "
                   + std::to_string(alg.size())});
        }
      }
    }
    return report;
  }

  SwitchingCheck verify_switching_term(FiniteAlgebra const& alg, Term const& switching) {
    SwitchingCheck result;
    if (switching.variable_bound() > 4) {
      result.holds = false;
      return result;
    }
    for_each_tuple(alg.size(), 4, [&](std::span<Element const> t) {
      if (!result.holds) {
        return;
      }
      Element const want = t[0] == t[1] ? t[2] : t[3];
      if (evaluate(switching, alg, t) != want) {
        result.holds          = false;
        result.counterexample = std::vector<Element>(t.begin(), t.end());
      }
    });
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subuniverses
  ////////////////////////////////////////////////////////////////////////

  std::vector<Element> subalgebra_closure(FiniteAlgebra const&     alg,
                                          std::span<Element const> seed) {
    std::vector<char> in(alg.size(), 0);
    std::vector<Element> members;
    auto add = [&](Element e) {
      if (!in[e]) {
        in[e] = 1;
        members.push_back(e);
      }
    };
    for (auto e : seed) {
      if (e >= alg.size()) {
        throw PreconditionError("seed element out of range");
      }
      add(e);
    }
    auto const& sig = alg.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
      if (sig[s].arity == 0) {
        add(alg.table(s)[0]);
      }
    }
    // Fixed point over tuples drawn from the current member list.
    bool changed = true;
    std::vector<Element> args;
    while (changed) {
      changed              = false;
      auto const snapshot  = members;
      for (std::size_t s = 0; s < sig.size(); ++s) {
        auto const k = sig[s].arity;
        if (k == 0) {
          continue;
        }
        args.resize(k);
        for_each_tuple(snapshot.size(), k, [&](std::span<Element const> idx) {
          for (std::size_t i = 0; i < k; ++i) {
            args[i] = snapshot[idx[i]];
          }
          auto v = alg.apply(s, args);
          if (!in[v]) {
            add(v);
            changed = true;
          }
        });
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  }

  namespace {
    bool canonical_less(std::vector<Element> const& a, std::vector<Element> const& b) {
      if (a.size() != b.size()) {
        return a.size() < b.size();
      }
      return a < b;
    }
  }  // namespace

  std::vector<std::vector<Element>> all_subalgebras(FiniteAlgebra const& alg,
                                                    std::size_t          subset_cap,
                                                    std::size_t          size_cap) {
    auto const n = alg.size();
    if (n > size_cap) {
      throw CapExceeded("algebra '" + alg.name() + "' exceeds subalgebra size cap",
                        n);
    }
    std::set<std::vector<Element>> found;
    std::vector<Element>           seed;
    auto                           record = [&] {
      auto sub = subalgebra_closure(alg, seed);
      if (!sub.empty()) {
        found.insert(std::move(sub));
      }
    };
    if (n <= subset_cap) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        seed.clear();
        for (std::size_t i = 0; i < n; ++i) {
          if (mask >> i & 1U) {
            seed.push_back(static_cast<Element>(i));
          }
        }
        record();
      }
    } else {
      record();
      for (Element a = 0; a < n; ++a) {
        for (Element b = a; b < n; ++b) {
          seed = {a, b};
          record();
        }
      }
    }
    std::vector<std::vector<Element>> result(found.begin(), found.end());
    std::sort(result.begin(), result.end(), canonical_less);
    return result;
  }

  Element Subalgebra::label_of(Element generator_element) const {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), generator_element);
    if (it == carrier.end() || *it != generator_element) {
      throw PreconditionError("element " + std::to_string(generator_element)
                              + " is not in the subalgebra");
    }
    return static_cast<Element>(it - carrier.begin());
  }

  Subalgebra restrict_to(FiniteAlgebra const& alg,
                         std::size_t          generator_index,
                         std::vector<Element> subuniverse) {
    std::sort(subuniverse.begin(), subuniverse.end());
    subuniverse.erase(std::unique(subuniverse.begin(), subuniverse.end()),
                      subuniverse.end());
    std::vector<Element> label(alg.size(), std::numeric_limits<Element>::max());
    for (std::size_t i = 0; i < subuniverse.size(); ++i) {
      label[subuniverse[i]] = static_cast<Element>(i);
    }
    auto const&                       sig = alg.signature();
    auto const                        k   = subuniverse.size();
    std::vector<std::vector<Element>> tables(sig.size());
    std::vector<Element>              args;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      args.resize(sig[s].arity);
      tables[s].reserve(tuple_count(k, sig[s].arity));
      for_each_tuple(k, sig[s].arity, [&](std::span<Element const> idx) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
          args[i] = subuniverse[idx[i]];
        }
        auto v = label[alg.apply(s, args)];
        if (v == std::numeric_limits<Element>::max()) {
          throw PreconditionError("set is not closed under " + sig[s].name);
        }
        tables[s].push_back(v);
      });
    }
    std::string name = alg.name() + "{";
    for (std::size_t i = 0; i < k; ++i) {
      name += (i ? "," : "") + std::to_string(subuniverse[i]);
    }
    name += "}";
    FiniteAlgebra sub(std::move(name), sig, k, std::move(tables));
    return Subalgebra{generator_index, std::move(subuniverse), std::move(sub)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruences
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), Element{0});
      }
      explicit UnionFind(Partition const& p) : _parent(p) {}

      Element find(Element x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      // Keeps the smaller root so that roots are block minima.
      bool unite(Element a, Element b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (b < a) {
          std::swap(a, b);
        }
        _parent[b] = a;
        return true;
      }

      Partition partition() {
        Partition p(_parent.size());
        for (Element i = 0; i < p.size(); ++i) {
          p[i] = find(i);
        }
        return p;
      }

     private:
      std::vector<Element> _parent;
    };

    // Closes an equivalence under compatibility with every operation.
    Partition close_congruence(FiniteAlgebra const& alg, UnionFind& uf) {
      auto const& sig     = alg.signature();
      auto const  n       = alg.size();
      bool        changed = true;
      std::vector<Element> args;
      while (changed) {
        changed = false;
        for (std::size_t s = 0; s < sig.size(); ++s) {
          auto const k = sig[s].arity;
          if (k == 0) {
            continue;
          }
          args.resize(k);
          for (std::size_t pos = 0; pos < k; ++pos) {
            for_each_tuple(n, k - 1, [&](std::span<Element const> rest) {
              for (std::size_t i = 0, j = 0; i < k; ++i) {
                if (i != pos) {
                  args[i] = rest[j++];
                }
              }
              for (Element x = 0; x < n; ++x) {
                auto const r = uf.find(x);
                if (r == x) {
                  continue;
                }
                args[pos]    = x;
                auto const a = alg.apply(s, args);
                args[pos]    = r;
                auto const b = alg.apply(s, args);
                changed |= uf.unite(a, b);
              }
            });
          }
        }
      }
      return uf.partition();
    }
  }  // namespace

  Partition principal_congruence(FiniteAlgebra const& alg, Element a, Element b) {
    UnionFind uf(alg.size());
    uf.unite(a, b);
    return close_congruence(alg, uf);
  }

  std::vector<Partition> enumerate_congruences(FiniteAlgebra const& alg,
                                               std::size_t          cap) {
    auto const n = alg.size();
    if (n > cap) {
      throw CapExceeded("algebra '" + alg.name() + "' exceeds congruence cap", n);
    }
    std::set<Partition> found;
    {
      UnionFind identity(n);
      found.insert(identity.partition());
    }
    std::vector<Partition> principal;
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        auto p = principal_congruence(alg, a, b);
        if (found.insert(p).second) {
          principal.push_back(std::move(p));
        }
      }
    }
    // Joins of congruences are joins of the equivalence relations, so closing
    // under joins with principal congruences reaches every congruence.
    std::vector<Partition> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
      std::vector<Partition> next;
      for (auto const& p : frontier) {
        for (auto const& q : principal) {
          UnionFind uf(p);
          for (Element i = 0; i < n; ++i) {
            uf.unite(i, q[i]);
          }
          auto j = uf.partition();
          if (found.insert(j).second) {
            next.push_back(std::move(j));
          }
        }
      }
      frontier = std::move(next);
    }
    return {found.begin(), found.end()};
  }

  bool isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    if (a.size() != b.size() || !(a.signature() == b.signature())) {
      return false;
    }
    if (a.size() > 8) {
      throw CapExceeded("isomorphism test limited to 8 elements", a.size());
    }
    std::vector<Element> perm(a.size());
    std::iota(perm.begin(), perm.end(), Element{0});
    do {
      if (!homomorphism_failure(a, b, perm)) {
        return true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  std::optional<std::string> homomorphism_failure(FiniteAlgebra const&     source,
                                                  FiniteAlgebra const&     target,
                                                  std::span<Element const> map) {
    if (map.size() != source.size()) {
      return "map has " + std::to_string(map.size()) + " entries, source has "
             + std::to_string(source.size()) + " elements";
    }
    for (auto v : map) {
      if (v >= target.size()) {
        return "image " + std::to_string(v) + " outside target";
      }
    }
    auto const&                sig = source.signature();
    std::optional<std::string> failure;
    std::vector<Element>       image;
    for (std::size_t s = 0; s < sig.size() && !failure; ++s) {
      image.resize(sig[s].arity);
      for_each_tuple(source.size(), sig[s].arity, [&](std::span<Element const> t) {
        if (failure) {
          return;
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
          image[i] = map[t[i]];
        }
        if (map[source.apply(s, t)] != target.apply(s, image)) {
          failure = "does not commute with " + sig[s].name;
        }
      });
    }
    return failure;
  }

  Homomorphism::Homomorphism(FiniteAlgebra const& source,
                             FiniteAlgebra const& target,
                             std::vector<Element> map)
      : _target_size(target.size()), _map(std::move(map)) {
    if (!(source.signature() == target.signature())) {
      throw PreconditionError("homomorphism between different signatures");
    }
    if (auto why = homomorphism_failure(source, target, _map)) {
      throw PreconditionError("not a homomorphism: " + *why);
    }
  }

  bool Homomorphism::injective() const {
    std::vector<char> seen(_target_size, 0);
    for (auto v : _map) {
      if (seen[v]) {
        return false;
      }
      seen[v] = 1;
    }
    return true;
  }

  bool Homomorphism::surjective() const {
    std::vector<char> seen(_target_size, 0);
    for (auto v : _map) {
      seen[v] = 1;
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentations
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Reorders the tables of `alg` to follow the symbol order of `sig`.
    FiniteAlgebra conform(FiniteAlgebra const& alg, Signature const& sig) {
      auto const& own = alg.signature();
      if (own.size() != sig.size()) {
        throw Error("algebra '" + alg.name() + "' has a different signature");
      }
      std::vector<std::vector<Element>> tables;
      for (auto const& sym : sig.symbols()) {
        auto idx = own.find(sym.name);
        if (!idx || own[*idx].arity != sym.arity) {
          throw Error("algebra '" + alg.name() + "' lacks symbol " + sym.name + "/"
                      + std::to_string(sym.arity));
        }
        tables.push_back(alg.table(*idx));
      }
      return FiniteAlgebra(alg.name(), sig, alg.size(), std::move(tables));
    }
  }  // namespace

  VarietyPresentation::VarietyPresentation(std::vector<FiniteAlgebra> generators,
                                           Term                       switching,
                                           VariableSet                switch_vars)
      : _switch(std::move(switching)), _switch_vars(std::move(switch_vars)) {
    if (generators.empty()) {
      throw Error("a presentation needs at least one generator");
    }
    auto const sig = generators.front().signature();
    for (auto& g : generators) {
      _generators.push_back(conform(g, sig));
    }
    _discriminator = derive_discriminator(_switch, _switch_vars);
    for (auto const& g : _generators) {
      if (g.size() < 2) {
        throw Error("generator '" + g.name() + "' has fewer than two elements");
      }
      auto check = verify_switching_term(g, _switch);
      if (!check.holds) {
        std::string msg = "switching term fails on '" + g.name() + "'";
        if (check.counterexample) {
          auto const& c = *check.counterexample;
          msg += " at (" + std::to_string(c[0]) + "," + std::to_string(c[1]) + ","
                 + std::to_string(c[2]) + "," + std::to_string(c[3]) + ")";
        }
        throw SwitchingTermError(msg);
      }
    }
  }

  Term VarietyPresentation::apply_switch(Term const& p,
                                         Term const& q,
                                         Term const& u,
                                         Term const& w) const {
    Term const args[] = {p, q, u, w};
    return substitute(_switch, args);
  }

  Term VarietyPresentation::apply_discriminator(Term const& p,
                                                Term const& q,
                                                Term const& r) const {
    Term const args[] = {p, q, r};
    return substitute(_discriminator, args);
  }

  std::vector<Subalgebra> si_inventory(VarietyPresentation const& vp,
                                       InventoryOptions const&    opts) {
    std::vector<Subalgebra> result;
    auto const&             gens = vp.generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (auto& sub : all_subalgebras(gens[g], opts.subset_cap, opts.size_cap)) {
        auto candidate = restrict_to(gens[g], g, std::move(sub));
        if (opts.dedup_isomorphic
            && std::any_of(result.begin(), result.end(), [&](Subalgebra const& s) {
                 return isomorphic(s.algebra, candidate.algebra);
               })) {
          continue;
        }
        result.push_back(std::move(candidate));
      }
    }
    return result;
  }

}  // namespace freeatom
