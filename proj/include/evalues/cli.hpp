#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace evalues {

// Thrown on malformed input values; run_cli maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Resolves the positional inputs of a subcommand into an ordered value list.
// A single "-" reads standard input, a single token naming an existing file
// reads that file, anything else is parsed inline. Values separate on
// whitespace and commas; the order is preserved. A non-numeric token raises
// UsageError naming the token and its 1-based position.
std::vector<double> read_values(const std::vector<std::string>& inputs,
                                std::istream& stdin_stream);

// Full dispatcher behind the evtool binary. Returns the process exit code:
// 0 on success, 1 when `validate` finds a violation, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace evalues
