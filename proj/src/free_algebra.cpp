#include "freeatom/free_algebra.hpp"

#include <algorithm>

namespace freeatom {

  std::vector<Coordinate> coordinate_system(VarietyPresentation const& vp,
                                            std::size_t                m) {
    std::vector<Coordinate> coords;
    auto const&             gens = vp.generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      tuple_count(gens[g].size(), m);  // overflow guard
      for_each_tuple(gens[g].size(), m, [&](std::span<Element const> asg) {
        coords.push_back({g, Assignment(asg.begin(), asg.end())});
      });
    }
    return coords;
  }

  std::size_t FreeAlgebra::VectorHash::operator()(
      std::vector<Element> const& v) const noexcept {
    // FNV-1a
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }

  std::optional<ElementId> FreeAlgebra::find(std::span<Element const> values) const {
    auto it = _index.find(std::vector<Element>(values.begin(), values.end()));
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  ElementId FreeAlgebra::apply(std::size_t symbol, std::span<ElementId const> args) const {
    std::vector<Element> result(_coords.size());
    std::vector<Element> operands(args.size());
    for (std::size_t j = 0; j < _coords.size(); ++j) {
      for (std::size_t i = 0; i < args.size(); ++i) {
        operands[i] = value(args[i], j);
      }
      result[j] = generator_at(j).apply(symbol, operands);
    }
    auto id = find(result);
    if (!id) {
      throw Error("free algebra is not closed under " + signature()[symbol].name);
    }
    return *id;
  }

  FiniteAlgebra FreeAlgebra::as_algebra(std::size_t entry_cap) const {
    auto const& sig   = signature();
    std::size_t total = 0;
    for (auto const& s : sig.symbols()) {
      total += tuple_count(size(), s.arity);
      if (total > entry_cap) {
        throw CapExceeded("free algebra tables exceed entry cap", total);
      }
    }
    std::vector<std::vector<Element>> tables(sig.size());
    std::vector<ElementId>            args;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      args.resize(sig[s].arity);
      for_each_tuple(size(), sig[s].arity, [&](std::span<Element const> t) {
        std::copy(t.begin(), t.end(), args.begin());
        tables[s].push_back(static_cast<Element>(apply(s, args)));
      });
    }
    return FiniteAlgebra(
        "F" + std::to_string(_vars.size()), sig, size(), std::move(tables));
  }

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  // Discovers elements by increasing witness size. A smallest term for any
  // element can be rebuilt from the witnesses of its immediate subterms'
  // values, so at size s it suffices to apply every symbol to every tuple of
  // known elements whose witness sizes sum to s - 1. Each tuple of elements
  // is therefore evaluated exactly once, at the size it produces.
  class FreeAlgebraBuilder {
   public:
    FreeAlgebraBuilder(FreeAlgebra& fa, std::size_t cap) : _fa(fa), _cap(cap) {}

    static FreeAlgebra empty(VarietyPresentation const& vp, VariableSet vars, std::size_t m) {
      return FreeAlgebra(vp, std::move(vars), coordinate_system(vp, m));
    }

    void run() {
      auto const& sig    = _fa.signature();
      auto const& coords = _fa._coords;
      auto const  m      = _fa._vars.size();

      begin_layer();
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<Element> v(coords.size());
        for (std::size_t j = 0; j < coords.size(); ++j) {
          v[j] = coords[j].assignment[i];
        }
        insert(std::move(v), Term::variable(i));
      }
      for (std::size_t s = 0; s < sig.size(); ++s) {
        if (sig[s].arity == 0) {
          std::vector<Element> v(coords.size());
          for (std::size_t j = 0; j < coords.size(); ++j) {
            v[j] = _fa.generator_at(j).table(s)[0];
          }
          insert(std::move(v), Term::apply(s, {}));
        }
      }
      end_layer();

      auto const max_arity = sig.max_arity();
      for (std::size_t size = 2; size - 1 <= max_arity * _max_size; ++size) {
        begin_layer();
        for (std::size_t s = 0; s < sig.size(); ++s) {
          auto const k = sig[s].arity;
          if (k == 0 || size - 1 < k) {
            continue;
          }
          _symbol = s;
          _tuple.assign(k, 0);
          _operands.assign(k, 0);
          recurse(0, size - 1);
        }
        end_layer();
      }
      while (!_fa._layers.empty() && _fa._layers.back() == 0) {
        _fa._layers.pop_back();
      }
    }

   private:
    void begin_layer() {
      _layer_start = _fa.size();
    }

    void end_layer() {
      auto const count = _fa.size() - _layer_start;
      _fa._layers.push_back(count);
      _by_size.emplace_back(_layer_start, _fa.size());
      if (count > 0) {
        _max_size = _by_size.size() - 1;
      }
    }

    void insert(std::vector<Element>&& values, Term&& witness) {
      if (_fa._index.contains(values)) {
        return;
      }
      if (_fa.size() >= _cap) {
        throw CapExceeded("free algebra exceeds " + std::to_string(_cap)
                              + " elements (reached " + std::to_string(_fa.size())
                              + ")",
                          _fa.size());
      }
      auto const id = _fa.size();
      _fa._values.insert(_fa._values.end(), values.begin(), values.end());
      _fa._witness.push_back(std::move(witness));
      _fa._index.emplace(std::move(values), id);
    }

    // Fills _tuple[pos..] with ids whose sizes sum to `remaining`, in
    // lexicographic id order.
    void recurse(std::size_t pos, std::size_t remaining) {
      auto const k    = _tuple.size();
      auto const left = k - 1 - pos;  // positions after this one
      if (remaining < left + 1) {
        return;
      }
      std::size_t lo = 1;
      if (remaining > left * _max_size) {
        lo = remaining - left * _max_size;
      }
      std::size_t const hi = std::min(remaining - left, _max_size);
      if (lo > hi) {
        return;
      }
      if (left == 0 && lo != remaining) {
        return;
      }
      auto const first = _by_size[lo].first;
      auto const last  = _by_size[hi].second;
      for (ElementId id = first; id < last; ++id) {
        _tuple[pos] = id;
        if (left == 0) {
          emit();
        } else {
          recurse(pos + 1, remaining - witness_size(id));
        }
      }
    }

    std::size_t witness_size(ElementId id) const {
      return _fa._witness[id].size();
    }

    void emit() {
      auto const&          coords = _fa._coords;
      std::vector<Element> v(coords.size());
      for (std::size_t j = 0; j < coords.size(); ++j) {
        for (std::size_t i = 0; i < _tuple.size(); ++i) {
          _operands[i] = _fa.value(_tuple[i], j);
        }
        v[j] = _fa.generator_at(j).apply(_symbol, _operands);
      }
      if (_fa._index.contains(v)) {
        return;
      }
      std::vector<Term> children;
      children.reserve(_tuple.size());
      for (auto id : _tuple) {
        children.push_back(_fa._witness[id]);
      }
      insert(std::move(v), Term::apply(_symbol, children));
    }

    FreeAlgebra& _fa;
    std::size_t  _cap;
    // _by_size[s] = [begin, end) of the ids whose witness has s nodes.
    std::vector<std::pair<ElementId, ElementId>> _by_size{{0, 0}};
    std::size_t                                  _max_size    = 0;
    ElementId                                    _layer_start = 0;

    std::size_t            _symbol = 0;
    std::vector<ElementId> _tuple;
    std::vector<Element>   _operands;
  };

  FreeAlgebra build_free_algebra(VarietyPresentation const& vp,
                                 std::size_t                m,
                                 FreeAlgebraOptions const&  opts,
                                 std::optional<VariableSet> vars) {
    if (m == 0) {
      throw PreconditionError("at least one free generator is required");
    }
    VariableSet names = vars ? std::move(*vars) : VariableSet::standard(m);
    if (names.size() != m) {
      throw PreconditionError("variable set size does not match generator count");
    }
    for (auto const& n : names.names()) {
      if (vp.signature().find(n)) {
        throw PreconditionError("variable '" + n + "' clashes with a symbol name");
      }
    }
    auto fa = FreeAlgebraBuilder::empty(vp, std::move(names), m);
    FreeAlgebraBuilder(fa, opts.element_cap).run();
    return fa;
  }

  ////////////////////////////////////////////////////////////////////////
  // Queries
  ////////////////////////////////////////////////////////////////////////

  std::vector<Element> evaluate_pointwise(FreeAlgebra const& fa, Term const& t) {
    if (t.variable_bound() > fa.variables().size()) {
      throw EvaluationError("term uses a variable outside the free generators");
    }
    auto const&          coords = fa.coordinates();
    std::vector<Element> v(coords.size());
    for (std::size_t j = 0; j < coords.size(); ++j) {
      v[j] = evaluate(t, fa.generator_at(j), coords[j].assignment);
    }
    return v;
  }

  ElementId element_of_term(FreeAlgebra const& fa, Term const& t) {
    auto id = fa.find(evaluate_pointwise(fa, t));
    if (!id) {
      throw Error("term value is not an element of the free algebra");
    }
    return *id;
  }

  std::vector<std::size_t> separating_coordinates(FreeAlgebra const& fa,
                                                  ElementId          a,
                                                  ElementId          b) {
    std::vector<std::size_t> result;
    for (std::size_t j = 0; j < fa.coordinates().size(); ++j) {
      if (fa.value(a, j) != fa.value(b, j)) {
        result.push_back(j);
      }
    }
    return result;
  }

  IdentityCheck validate_identity(VarietyPresentation const& vp,
                                  Term const&                lhs,
                                  Term const&                rhs,
                                  std::size_t                variable_count) {
    if (lhs.variable_bound() > variable_count || rhs.variable_bound() > variable_count) {
      throw EvaluationError("identity uses more variables than declared");
    }
    IdentityCheck result;
    auto const&   gens = vp.generators();
    for (std::size_t g = 0; g < gens.size() && result.holds; ++g) {
      for_each_tuple(gens[g].size(), variable_count, [&](std::span<Element const> asg) {
        if (result.holds
            && evaluate(lhs, gens[g], asg) != evaluate(rhs, gens[g], asg)) {
          result.holds          = false;
          result.counterexample = {g, Assignment(asg.begin(), asg.end())};
        }
      });
    }
    return result;
  }

  FreeHomomorphism induced_hom(FreeAlgebra const&       fa,
                               std::span<Element const> asg,
                               Subalgebra const&        target) {
    auto const m = fa.variables().size();
    if (asg.size() != m) {
      throw PreconditionError("assignment must cover every free generator");
    }
    Assignment image(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (asg[i] >= target.carrier.size()) {
        throw PreconditionError("assignment value outside the target");
      }
      image[i] = target.carrier[asg[i]];
    }
    auto const& coords = fa.coordinates();
    auto        it     = std::find_if(coords.begin(), coords.end(), [&](Coordinate const& c) {
      return c.generator == target.generator && c.assignment == image;
    });
    if (it == coords.end()) {
      throw PreconditionError("target is not a subalgebra of a presentation generator");
    }
    FreeHomomorphism hom{static_cast<std::size_t>(it - coords.begin()), {}};
    hom.map.reserve(fa.size());
    for (ElementId e = 0; e < fa.size(); ++e) {
      auto const v = evaluate(fa.witness(e), target.algebra, asg);
      if (target.carrier[v] != fa.value(e, hom.coordinate)) {
        throw Error("induced map is not well defined at element "
                    + std::to_string(e));
      }
      hom.map.push_back(v);
    }
    return hom;
  }

}  // namespace freeatom
