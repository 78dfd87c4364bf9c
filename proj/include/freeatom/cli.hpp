#pragma once

// Command-line front end. Commands: validate, build-free, check-preorder,
// find-cover, atomic-check, compile-formula, subalgebras.
//
// Exit codes: 0 success, 1 property failure, 2 parse or input error,
// 3 switching-term failure, 4 cap exceeded.

#include <ostream>
#include <string>
#include <vector>

namespace freeatom {

  enum ExitCode : int {
    exit_ok        = 0,
    exit_property  = 1,
    exit_parse     = 2,
    exit_switching = 3,
    exit_cap       = 4,
  };

  // `args` excludes the program name.
  int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace freeatom
