#pragma once

// Line-oriented algebra files:
//
//   algebra <name>
//   size <n>
//   op <symbol> <arity>
//   <n^arity integers, row-major over argument tuples, lexicographic>
//   ...
//
// A file may hold several algebras. Blank lines are ignored, and '#' starts
// a comment that runs to the end of the line.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "freeatom/finite_algebra.hpp"

namespace freeatom {

  struct ParsedAlgebra {
    FiniteAlgebra                         algebra;  // unchecked
    std::size_t                           line;     // of the "algebra" line
    std::vector<std::size_t>              op_lines;
    std::vector<std::vector<std::size_t>> entry_lines;
  };

  // Syntax only; tables are not validated. Throws ParseError with a line number.
  std::vector<ParsedAlgebra> parse_algebra_text(std::string_view text);

  struct Diagnostic {
    std::size_t line;
    std::string message;  // starts with "line N: "
  };

  // Validation violations of a parsed algebra, located by line.
  std::vector<Diagnostic> diagnose(ParsedAlgebra const& parsed);

  // Parses and validates; the first violation is thrown as a ParseError.
  std::vector<FiniteAlgebra> load_algebras(std::string_view text);
  std::vector<FiniteAlgebra> load_algebra_file(std::filesystem::path const& path);

  std::string read_file(std::filesystem::path const& path);

  std::string write_algebra(FiniteAlgebra const& alg);

}  // namespace freeatom
