#include <iostream>

#include "cli/cli.hpp"

namespace {

constexpr const char* kUsage = R"(usage: bnpid <verb> [flags]

verbs:
  run             --scenario ID [--n N] [--n-draws N] [--seed S] [--grid lo:hi:step]
                  [--prior-family I|II|III|IV] [--alpha A] [--out-dir DIR]
                  [--workers W] [--hist-bins B] [--emit-data] [--config FILE]
  list-scenarios
  oracle          --scenario toy_analytic|binary_missing [--gamma G]... [--probe lo,hi]...
                  [--dirichlet a1,a2,a3] [--counts n1,n0,m]
  help
)";

}  // namespace

int main(int argc, char** argv) {
    using namespace bnpid::cli;
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "help" || args[0] == "--help" || args[0] == "-h") {
        std::cout << kUsage;
        return args.empty() ? 2 : 0;
    }
    try {
        if (args[0] == "run") {
            const RunReport r = run_scenario(parse_config(args));
            std::cout << "wrote " << r.run_dir.string() << "\n";
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        } else if (args[0] == "list-scenarios") {
            for (const auto& line : list_scenarios()) std::cout << line << "\n";
        } else if (args[0] == "oracle") {
            for (const auto& line : run_oracle(args)) std::cout << line << "\n";
        } else {
            throw UsageError("unknown verb \"" + args[0] + "\"");
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
