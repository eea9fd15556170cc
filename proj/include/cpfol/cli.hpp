#pragma once

#include <string>
#include <vector>

namespace cpfol {

// Batch front-end shared by the command-line binary and the tests.
// `args` are the words after the program name.  Reports land in `out`
// (and in --output when given); diagnostics land in `err`.  Exit codes:
// 0 success, 2 parse/usage errors, 3 precondition violations, 4 numeric
// failures.  A fixed --seed makes every randomized choice reproducible,
// and reports are byte-identical for any --jobs value.
struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};
CliResult cli_run(const std::vector<std::string>& args);

} // namespace cpfol
