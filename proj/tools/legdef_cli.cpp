#include <cstdio>
#include <string>
#include <vector>

#include "legdef/cli_runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    legdef::CliResult r = legdef::run_cli(args);
    if (!r.out.empty())
        std::fputs(r.out.c_str(), stdout);
    if (!r.err.empty())
        std::fputs(r.err.c_str(), stderr);
    return r.exit_code;
}
