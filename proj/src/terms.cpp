#include "freeatom/terms.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace freeatom {

  ////////////////////////////////////////////////////////////////////////
  // Signature / VariableSet
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool is_identifier(std::string_view s) {
      if (s.empty()) {
        return false;
      }
      auto const head = static_cast<unsigned char>(s.front());
      if (!std::isalpha(head) && s.front() != '_') {
        return false;
      }
      return std::all_of(s.begin() + 1, s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      });
    }
  }  // namespace

  Signature::Signature(std::vector<Symbol> symbols) {
    for (auto& s : symbols) {
      add(std::move(s.name), s.arity);
    }
  }

  std::size_t Signature::add(std::string name, std::size_t arity) {
    if (!is_identifier(name)) {
      throw Error("invalid symbol name '" + name + "'");
    }
    if (find(name)) {
      throw Error("duplicate symbol '" + name + "'");
    }
    _symbols.push_back({std::move(name), arity});
    return _symbols.size() - 1;
  }

  std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < _symbols.size(); ++i) {
      if (_symbols[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t Signature::max_arity() const noexcept {
    std::size_t result = 0;
    for (auto const& s : _symbols) {
      result = std::max(result, s.arity);
    }
    return result;
  }

  VariableSet::VariableSet(std::vector<std::string> names)
      : _names(std::move(names)) {
    std::unordered_set<std::string> seen;
    for (auto const& n : _names) {
      if (!is_identifier(n)) {
        throw Error("invalid variable name '" + n + "'");
      }
      if (!seen.insert(n).second) {
        throw Error("duplicate variable '" + n + "'");
      }
    }
  }

  VariableSet VariableSet::standard(std::size_t m) {
    static constexpr char const* short_names[] = {"x", "y", "z"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) {
      names.push_back(m <= 3 ? short_names[i] : "x" + std::to_string(i));
    }
    return VariableSet(std::move(names));
  }

  std::optional<std::size_t> VariableSet::find(std::string_view name) const {
    auto it = std::find(_names.begin(), _names.end(), name);
    if (it == _names.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - _names.begin());
  }

  ////////////////////////////////////////////////////////////////////////
  // Term
  ////////////////////////////////////////////////////////////////////////

  Term Term::variable(std::size_t index) {
    return Term({{TermNode::Kind::variable, static_cast<std::uint32_t>(index), 0}});
  }

  Term Term::apply(std::size_t symbol, std::span<Term const> children) {
    std::size_t total = 1;
    for (auto const& c : children) {
      total += c.size();
    }
    std::vector<TermNode> nodes;
    nodes.reserve(total);
    for (auto const& c : children) {
      nodes.insert(nodes.end(), c._nodes.begin(), c._nodes.end());
    }
    nodes.push_back({TermNode::Kind::application,
                     static_cast<std::uint32_t>(symbol),
                     static_cast<std::uint32_t>(children.size())});
    return Term(std::move(nodes));
  }

  Term Term::apply(std::size_t symbol, std::initializer_list<Term> children) {
    return apply(symbol, std::span<Term const>(children.begin(), children.size()));
  }

  Term Term::from_postfix(std::vector<TermNode> nodes) {
    std::size_t height = 0;
    for (auto const& n : nodes) {
      if (n.kind == TermNode::Kind::variable) {
        if (n.arity != 0) {
          throw Error("variable node with nonzero arity");
        }
        ++height;
      } else {
        if (height < n.arity) {
          throw Error("postfix sequence underflows");
        }
        height = height - n.arity + 1;
      }
    }
    if (height != 1) {
      throw Error("postfix sequence is not a single term");
    }
    return Term(std::move(nodes));
  }

  namespace {
    // sizes[i] = number of nodes in the subterm rooted at i.
    std::vector<std::size_t> subterm_sizes(std::vector<TermNode> const& nodes) {
      std::vector<std::size_t> sizes(nodes.size());
      std::vector<std::size_t> stack;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::size_t s = 1;
        for (std::uint32_t k = 0; k < nodes[i].arity; ++k) {
          s += stack.back();
          stack.pop_back();
        }
        sizes[i] = s;
        stack.push_back(s);
      }
      return sizes;
    }

    // Root positions of the children of node `at`, left to right.
    std::vector<std::size_t> child_roots(std::vector<TermNode> const&   nodes,
                                         std::vector<std::size_t> const& sizes,
                                         std::size_t                     at) {
      std::vector<std::size_t> roots(nodes[at].arity);
      std::size_t              pos = at;
      for (std::size_t k = roots.size(); k-- > 0;) {
        --pos;
        roots[k] = pos;
        pos -= sizes[pos] - 1;
      }
      return roots;
    }
  }  // namespace

  std::vector<Term> Term::children() const {
    auto const               sizes = subterm_sizes(_nodes);
    std::vector<Term>        result;
    for (auto r : child_roots(_nodes, sizes, _nodes.size() - 1)) {
      auto first = _nodes.begin() + static_cast<std::ptrdiff_t>(r + 1 - sizes[r]);
      auto last  = _nodes.begin() + static_cast<std::ptrdiff_t>(r + 1);
      result.push_back(Term(std::vector<TermNode>(first, last)));
    }
    return result;
  }

  std::size_t Term::variable_bound() const noexcept {
    std::size_t bound = 0;
    for (auto const& n : _nodes) {
      if (n.kind == TermNode::Kind::variable) {
        bound = std::max<std::size_t>(bound, n.index + 1);
      }
    }
    return bound;
  }

  std::size_t Term::depth() const {
    std::vector<std::size_t> stack;
    for (auto const& n : _nodes) {
      std::size_t d = 0;
      for (std::uint32_t k = 0; k < n.arity; ++k) {
        d = std::max(d, stack.back() + 1);
        stack.pop_back();
      }
      stack.push_back(d);
    }
    return stack.back();
  }

  Term make_application(Signature const&      sig,
                        std::size_t           symbol,
                        std::span<Term const> children) {
    if (symbol >= sig.size()) {
      throw Error("symbol index out of range");
    }
    if (sig[symbol].arity != children.size()) {
      throw ArityError("symbol '" + sig[symbol].name + "' has arity "
                           + std::to_string(sig[symbol].arity) + ", given "
                           + std::to_string(children.size()),
                       0);
    }
    return Term::apply(symbol, children);
  }

  Term make_application(Signature const&            sig,
                        std::string_view            symbol,
                        std::initializer_list<Term> children) {
    auto idx = sig.find(symbol);
    if (!idx) {
      throw UnknownSymbolError("unknown symbol '" + std::string(symbol) + "'", 0);
    }
    return make_application(
        sig, *idx, std::span<Term const>(children.begin(), children.size()));
  }

  Term substitute(Term const& t, std::span<Term const> replacement) {
    std::vector<TermNode> nodes;
    for (auto const& n : t.nodes()) {
      if (n.kind == TermNode::Kind::variable) {
        if (n.index >= replacement.size()) {
          throw EvaluationError("no replacement for variable index "
                                + std::to_string(n.index));
        }
        auto const& r = replacement[n.index].nodes();
        nodes.insert(nodes.end(), r.begin(), r.end());
      } else {
        nodes.push_back(n);
      }
    }
    return Term::from_postfix(std::move(nodes));
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing and printing
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct Token {
      enum class Kind { open, close, ident, end } kind;
      std::string_view text;
      std::size_t      offset;
    };

    class Lexer {
     public:
      explicit Lexer(std::string_view text) : _text(text) {}

      Token next() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
        if (_pos == _text.size()) {
          return {Token::Kind::end, {}, _pos};
        }
        auto const start = _pos;
        char const c     = _text[_pos];
        if (c == '(') {
          ++_pos;
          return {Token::Kind::open, _text.substr(start, 1), start};
        }
        if (c == ')') {
          ++_pos;
          return {Token::Kind::close, _text.substr(start, 1), start};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          while (_pos < _text.size()
                 && (std::isalnum(static_cast<unsigned char>(_text[_pos]))
                     || _text[_pos] == '_')) {
            ++_pos;
          }
          return {Token::Kind::ident, _text.substr(start, _pos - start), start};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
      }

     private:
      std::string_view _text;
      std::size_t      _pos = 0;
    };

    struct Frame {
      std::uint32_t symbol;
      std::size_t   arity;
      std::size_t   children;
      std::size_t   offset;
    };
  }  // namespace

  Term parse_term(std::string_view text, Signature const& sig, VariableSet const& vars) {
    Lexer                 lex(text);
    std::vector<TermNode> out;
    std::vector<Frame>    frames;
    bool                  done = false;

    auto leaf_done = [&] {
      if (frames.empty()) {
        done = true;
      } else {
        ++frames.back().children;
      }
    };

    while (true) {
      Token tok = lex.next();
      if (done) {
        if (tok.kind != Token::Kind::end) {
          throw ParseError("trailing input after term", tok.offset);
        }
        break;
      }
      switch (tok.kind) {
        case Token::Kind::end:
          throw ParseError(frames.empty() ? "empty term" : "unbalanced '('",
                           tok.offset);
        case Token::Kind::close: {
          if (frames.empty()) {
            throw ParseError("unexpected ')'", tok.offset);
          }
          Frame f = frames.back();
          frames.pop_back();
          if (f.children != f.arity) {
            throw ArityError("symbol '" + sig[f.symbol].name + "' has arity "
                                 + std::to_string(f.arity) + ", given "
                                 + std::to_string(f.children),
                             f.offset);
          }
          out.push_back({TermNode::Kind::application,
                         f.symbol,
                         static_cast<std::uint32_t>(f.arity)});
          leaf_done();
          break;
        }
        case Token::Kind::open: {
          Token head = lex.next();
          if (head.kind != Token::Kind::ident) {
            throw ParseError("expected operation symbol after '('", head.offset);
          }
          auto sym = sig.find(head.text);
          if (!sym) {
            throw UnknownSymbolError(
                "unknown operation symbol '" + std::string(head.text) + "'",
                head.offset);
          }
          frames.push_back({static_cast<std::uint32_t>(*sym),
                            sig[*sym].arity,
                            0,
                            head.offset});
          break;
        }
        case Token::Kind::ident: {
          if (auto v = vars.find(tok.text)) {
            out.push_back(
                {TermNode::Kind::variable, static_cast<std::uint32_t>(*v), 0});
          } else if (auto sym = sig.find(tok.text)) {
            if (sig[*sym].arity != 0) {
              throw ArityError("symbol '" + std::string(tok.text) + "' has arity "
                                   + std::to_string(sig[*sym].arity) + ", given 0",
                               tok.offset);
            }
            out.push_back(
                {TermNode::Kind::application, static_cast<std::uint32_t>(*sym), 0});
          } else {
            throw UnknownSymbolError(
                "unknown identifier '" + std::string(tok.text) + "'", tok.offset);
          }
          leaf_done();
          break;
        }
      }
    }
    return Term::from_postfix(std::move(out));
  }

  std::vector<Term> parse_terms(std::string_view   text,
                                Signature const&   sig,
                                VariableSet const& vars) {
    std::vector<Term> result;
    std::size_t       pos = 0;
    while (true) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (pos == text.size()) {
        return result;
      }
      // End of the next top-level term: matching bracket or end of identifier.
      std::size_t end = pos;
      if (text[pos] == '(') {
        long depth = 0;
        do {
          if (text[end] == '(') {
            ++depth;
          } else if (text[end] == ')') {
            --depth;
          }
          ++end;
        } while (end < text.size() && depth > 0);
      } else {
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))
               && text[end] != '(' && text[end] != ')') {
          ++end;
        }
        if (end == pos) {
          ++end;  // stray ')', reported by parse_term
        }
      }
      try {
        result.push_back(parse_term(text.substr(pos, end - pos), sig, vars));
      } catch (ParseError const& e) {
        throw ParseError(e.what(), e.position() + pos);
      }
      pos = end;
    }
  }

  std::string print_term(Term const& t, Signature const& sig, VariableSet const& vars) {
    auto const& nodes = t.nodes();
    auto const  sizes = subterm_sizes(nodes);

    auto name_of = [&](TermNode const& n) -> std::string const& {
      if (n.kind == TermNode::Kind::variable) {
        if (n.index >= vars.size()) {
          throw Error("variable index " + std::to_string(n.index)
                      + " has no name");
        }
        return vars[n.index];
      }
      if (n.index >= sig.size()) {
        throw Error("symbol index " + std::to_string(n.index) + " out of range");
      }
      return sig[n.index].name;
    };

    // Items >= 0 are node positions to print; -1 closes a parenthesis.
    std::string                 out;
    std::vector<std::ptrdiff_t> todo{static_cast<std::ptrdiff_t>(nodes.size() - 1)};
    bool                        need_space = false;
    while (!todo.empty()) {
      auto item = todo.back();
      todo.pop_back();
      if (item < 0) {
        out += ')';
        need_space = true;
        continue;
      }
      if (need_space) {
        out += ' ';
      }
      auto const  at = static_cast<std::size_t>(item);
      auto const& n  = nodes[at];
      if (n.arity == 0) {
        out += name_of(n);
        need_space = true;
        continue;
      }
      out += '(';
      out += name_of(n);
      need_space = true;
      todo.push_back(-1);
      auto roots = child_roots(nodes, sizes, at);
      for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
        todo.push_back(static_cast<std::ptrdiff_t>(*it));
      }
    }
    return out;
  }

  Term derive_discriminator(Term const& switching, VariableSet const& switch_vars) {
    if (switch_vars.size() != 4 || switching.variable_bound() > 4) {
      throw PreconditionError("switching term must be over exactly 4 variables");
    }
    Term const x = Term::variable(0), y = Term::variable(1), z = Term::variable(2);
    Term const args[] = {x, y, z, x};
    return substitute(switching, args);
  }

}  // namespace freeatom
