// Command-line front end: routing, verification, exit codes, output.
//
// solve exit codes:
//   0  at least one solution was printed
//   1  provably unsolvable (pure unification and dismatching inputs, or an
//      unsatisfiable propositional skeleton; these routes are complete)
//   2  no local solution found, general solvability undecided (plain
//      disunification routes only)
//   3  errors (parse failures, resource limits, internal verification)
// check: 0 solution, 1 not a solution, 3 errors.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "eldis/engine.hpp"

namespace eldis {

struct RunConfig {
    enum class Verb { Solve, Check, Flatten, Encode };

    Verb verb = Verb::Solve;
    EngineKind engine = EngineKind::Sat;
    std::size_t maxSolutions = 1;  // SIZE_MAX enumerates all
    bool dedup = false;
    bool verify = true;
    unsigned seed = 0;  // reserved for randomized developer tooling
    unsigned timeoutMs = 0;
    std::optional<std::string> satCmd;
    bool showReduced = false;
    bool trace = false;
    bool showInternal = false;
    bool forceLocal = false;
    std::string dimacsOut;
    std::string varmapOut;
    int threads = 1;
};

int runSolve(const RunConfig& cfg, const std::string& problemPath, std::ostream& out,
             std::ostream& err);
int runCheck(const RunConfig& cfg, const std::string& problemPath,
             const std::string& substPath, std::ostream& out, std::ostream& err);
int runFlatten(const RunConfig& cfg, const std::string& problemPath, std::ostream& out,
               std::ostream& err);
int runEncode(const RunConfig& cfg, const std::string& problemPath, std::ostream& out,
              std::ostream& err);

}  // namespace eldis
