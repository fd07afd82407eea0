#pragma once

#include <string>
#include <vector>

namespace legdef {

struct CliResult {
    int exit_code = 0;
    std::string out;  /* stdout payload */
    std::string err;  /* stderr payload (text-mode errors) */
};

/*
 * Run one batch command. Subcommands: classify, conormal, project,
 * fake-conormal, transform, module, family. Exit codes: 0 success,
 * 2 parse/validation, 3 computation, 4 internal.
 */
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace legdef
