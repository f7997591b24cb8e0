// eldis: unification, dismatching and local disunification of EL concept
// terms. See README.md for the problem file grammar and examples.

#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "eldis/cli.hpp"

namespace {

void addSolveFlags(CLI::App* cmd, eldis::RunConfig& cfg, std::string& maxSolutions) {
    std::map<std::string, eldis::EngineKind> engines{
        {"sat", eldis::EngineKind::Sat},
        {"rules", eldis::EngineKind::Rules},
        {"brute", eldis::EngineKind::Brute},
    };
    cmd->add_option("--engine", cfg.engine, "Local engine: sat, rules or brute")
        ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case))
        ->default_str("sat");
    cmd->add_option("--max-solutions", maxSolutions,
                    "Number of solutions to print, or 'all'")
        ->default_str("1");
    cmd->add_flag("--dedup", cfg.dedup,
                  "Drop solutions equivalent to an already printed one");
    cmd->add_flag("!--no-verify", cfg.verify,
                  "Skip re-checking printed solutions against the input");
    cmd->add_flag("--show-reduced", cfg.showReduced,
                  "Print each reduced flat problem of the dismatching route");
    cmd->add_flag("--show-internal", cfg.showInternal,
                  "Print bindings of internal '_v' variables too");
    cmd->add_flag("--trace", cfg.trace, "Print the applied-rule log (rules engine)");
    cmd->add_flag("--force-local", cfg.forceLocal,
                  "Skip dismatching routing; decide local solvability only");
    cmd->add_option("--timeout-ms", cfg.timeoutMs, "Abort after this many milliseconds");
    cmd->add_option("--sat-cmd", cfg.satCmd,
                    "External SAT solver command; '{}' is replaced by the DIMACS path");
    cmd->add_option("--threads", cfg.threads,
                    "Worker threads for the dismatching route")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed,
                    "Seed for randomized developer tooling (no effect on solving)");
}

std::size_t parseMaxSolutions(const std::string& text) {
    if (text == "all") return SIZE_MAX;
    try {
        unsigned long long n = std::stoull(text);
        if (n == 0) throw std::invalid_argument("zero");
        return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--max-solutions", "expected a positive number or 'all'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unification, dismatching and local disunification in EL"};
    app.require_subcommand(1);

    eldis::RunConfig cfg;
    std::string problemPath, substPath;
    std::string maxSolutions = "1";

    CLI::App* solve = app.add_subcommand("solve", "Solve a problem file");
    solve->add_option("problem", problemPath, "Problem file")->required();
    addSolveFlags(solve, cfg, maxSolutions);

    CLI::App* check = app.add_subcommand("check", "Verify a substitution against a problem");
    check->add_option("problem", problemPath, "Problem file")->required();
    check->add_option("substitution", substPath, "Substitution file")->required();
    check->add_flag("--trace", cfg.trace, "Print a verdict per subsumption leaf");

    CLI::App* flatten = app.add_subcommand("flatten", "Print the flattened problem");
    flatten->add_option("problem", problemPath, "Problem file")->required();

    CLI::App* encode = app.add_subcommand("encode", "Write the DIMACS CNF and varmap");
    encode->add_option("problem", problemPath, "Problem file")->required();
    encode->add_option("--dimacs-out", cfg.dimacsOut, "CNF output path");
    encode->add_option("--varmap-out", cfg.varmapOut, "Varmap output path");

    try {
        app.parse(argc, argv);
        cfg.maxSolutions = parseMaxSolutions(maxSolutions);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (solve->parsed()) {
            cfg.verb = eldis::RunConfig::Verb::Solve;
            return eldis::runSolve(cfg, problemPath, std::cout, std::cerr);
        }
        if (check->parsed()) {
            cfg.verb = eldis::RunConfig::Verb::Check;
            return eldis::runCheck(cfg, problemPath, substPath, std::cout, std::cerr);
        }
        if (flatten->parsed()) {
            cfg.verb = eldis::RunConfig::Verb::Flatten;
            return eldis::runFlatten(cfg, problemPath, std::cout, std::cerr);
        }
        cfg.verb = eldis::RunConfig::Verb::Encode;
        return eldis::runEncode(cfg, problemPath, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
