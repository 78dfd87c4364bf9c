#include "freeatom/algebra_io.hpp"

#include <charconv>
#include <limits>
#include <fstream>
#include <sstream>

namespace freeatom {

  namespace {
    // Words of a line up to any '#' comment.
    std::vector<std::string_view> split_words(std::string_view line) {
      line = line.substr(0, line.find('#'));
      std::vector<std::string_view> words;
      std::size_t                   i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
          ++i;
        }
        auto const start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
          ++i;
        }
        if (i > start) {
          words.push_back(line.substr(start, i - start));
        }
      }
      return words;
    }

    std::size_t to_number(std::string_view word, std::size_t line) {
      std::size_t value = 0;
      auto [ptr, ec]    = std::from_chars(word.data(), word.data() + word.size(), value);
      if (ec != std::errc() || ptr != word.data() + word.size()) {
        throw ParseError("line " + std::to_string(line) + ": expected a non-negative"
                             " integer, found '" + std::string(word) + "'",
                         line);
      }
      return value;
    }

    struct Builder {
      std::string                           name;
      std::size_t                           line;
      std::optional<std::size_t>            size;
      Signature                             sig;
      std::vector<std::vector<Element>>     tables;
      std::vector<std::size_t>              op_lines;
      std::vector<std::vector<std::size_t>> entry_lines;

      ParsedAlgebra finish() {
        if (!size) {
          throw ParseError("line " + std::to_string(line) + ": algebra '" + name
                               + "' has no size line",
                           line);
        }
        return ParsedAlgebra{
            FiniteAlgebra::unchecked(name, std::move(sig), *size, std::move(tables)),
            line,
            std::move(op_lines),
            std::move(entry_lines)};
      }
    };
  }  // namespace

  std::vector<ParsedAlgebra> parse_algebra_text(std::string_view text) {
    std::vector<ParsedAlgebra> result;
    std::optional<Builder>     cur;
    std::size_t                line_no = 0;
    std::size_t                pos     = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      auto const line = text.substr(pos, end - pos);
      pos             = end + 1;
      ++line_no;
      auto const words = split_words(line);
      if (words.empty()) {
        continue;
      }
      auto const where = "line " + std::to_string(line_no) + ": ";
      auto const key   = words.front();
      if (key == "algebra") {
        if (words.size() != 2) {
          throw ParseError(where + "expected 'algebra <name>'", line_no);
        }
        if (cur) {
          result.push_back(cur->finish());
        }
        cur.emplace();
        cur->name = std::string(words[1]);
        cur->line = line_no;
        continue;
      }
      if (!cur) {
        throw ParseError(where + "expected 'algebra <name>' first", line_no);
      }
      if (key == "size") {
        if (words.size() != 2 || cur->size) {
          throw ParseError(where + "expected a single 'size <n>'", line_no);
        }
        cur->size = to_number(words[1], line_no);
      } else if (key == "op") {
        if (words.size() != 3) {
          throw ParseError(where + "expected 'op <symbol> <arity>'", line_no);
        }
        if (!cur->size) {
          throw ParseError(where + "'op' before 'size'", line_no);
        }
        try {
          cur->sig.add(std::string(words[1]), to_number(words[2], line_no));
        } catch (ParseError const&) {
          throw;
        } catch (Error const& e) {
          throw ParseError(where + e.what(), line_no);
        }
        cur->tables.emplace_back();
        cur->op_lines.push_back(line_no);
        cur->entry_lines.emplace_back();
      } else {
        if (cur->tables.empty()) {
          throw ParseError(where + "unexpected '" + std::string(key) + "'", line_no);
        }
        for (auto w : words) {
          auto v = to_number(w, line_no);
          if (v > std::numeric_limits<Element>::max()) {
            throw ParseError(where + "entry too large", line_no);
          }
          cur->tables.back().push_back(static_cast<Element>(v));
          cur->entry_lines.back().push_back(line_no);
        }
      }
    }
    if (cur) {
      result.push_back(cur->finish());
    }
    return result;
  }

  std::vector<Diagnostic> diagnose(ParsedAlgebra const& parsed) {
    std::vector<Diagnostic> out;
    for (auto const& v : validate_algebra(parsed.algebra).violations) {
      std::size_t line = parsed.line;
      if (v.kind == Violation::Kind::range) {
        line = parsed.entry_lines[v.symbol][v.entry];
      } else if (v.kind == Violation::Kind::totality
                 && v.symbol < parsed.op_lines.size()) {
        line = parsed.op_lines[v.symbol];
      }
      out.push_back({line,
                     "line " + std::to_string(line) + ": algebra '"
                         + parsed.algebra.name() + "': " + v.message});
    }
    return out;
  }

  std::vector<FiniteAlgebra> load_algebras(std::string_view text) {
    std::vector<FiniteAlgebra> result;
    for (auto& parsed : parse_algebra_text(text)) {
      auto problems = diagnose(parsed);
      if (!problems.empty()) {
        throw ParseError(problems.front().message, problems.front().line);
      }
      auto const& a = parsed.algebra;
      result.emplace_back(a.name(), a.signature(), a.size(), a.tables());
    }
    if (result.empty()) {
      throw ParseError("no algebra found", 1);
    }
    return result;
  }

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  std::vector<FiniteAlgebra> load_algebra_file(std::filesystem::path const& path) {
    try {
      return load_algebras(read_file(path));
    } catch (ParseError const& e) {
      throw ParseError(path.string() + ": " + e.what(), e.position());
    }
  }

  std::string write_algebra(FiniteAlgebra const& alg) {
    std::string out = "algebra " + alg.name() + "\nsize " + std::to_string(alg.size())
                      + "\n";
    auto const& sig = alg.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
      out += "op " + sig[s].name + " " + std::to_string(sig[s].arity) + "\n";
      auto const& table = alg.table(s);
      // One row per assignment of all but the last argument.
      std::size_t const row = sig[s].arity == 0 ? 1 : alg.size();
      for (std::size_t i = 0; i < table.size(); ++i) {
        out += std::to_string(table[i]);
        out += (i + 1) % row == 0 ? "\n" : " ";
      }
    }
    return out;
  }

}  // namespace freeatom
