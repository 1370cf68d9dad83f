#ifndef BAUML_CLI_HPP
#define BAUML_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bauml::cli {

enum class Outcome {
    Ok,           // analysis done / property holds / machine halted
    Violated,     // property fails, counterexample printed
    Unknown,      // a budget or state limit cut the exploration short
    Undecidable,  // model outside the decidable classes and no explicit bound
    UsageError,   // bad flags, unparsable input, model errors
};

int exit_code(Outcome o);

// Full command-line front end; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bauml::cli

#endif
