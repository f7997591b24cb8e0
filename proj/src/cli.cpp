#include "eldis/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "eldis/normalize.hpp"
#include "eldis/parser.hpp"
#include "eldis/render.hpp"
#include "eldis/subsume.hpp"

namespace eldis {

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool isPureUnification(const BasicProblem& b) {
    for (const Statement& s : b.statements) {
        if (s.kind == StatementKind::Dissub) return false;
    }
    return true;
}

struct SolveSession {
    const RunConfig& cfg;
    const GeneralProblem& g;
    std::ostream& out;
    Deadline deadline;
    EngineOptions opts;
    std::size_t printed = 0;
    std::vector<Substitution> dedupPool;  // restricted solutions already printed
    std::vector<std::string> pendingTrace;
    bool anyLocalOnly = false;

    SolveSession(const RunConfig& cfg, const GeneralProblem& g, std::ostream& out)
        : cfg(cfg), g(g), out(out) {
        if (cfg.timeoutMs > 0) {
            deadline = Deadline::after(std::chrono::milliseconds(cfg.timeoutMs));
            opts.deadline = &deadline;
        }
        if (cfg.satCmd) opts.satBackend = externalSatBackend(*cfg.satCmd);
        if (cfg.trace) {
            opts.onTrace = [this](const std::vector<std::string>& t) { pendingTrace = t; };
        }
    }

    std::size_t engineQuota() const {
        return cfg.dedup ? SIZE_MAX : cfg.maxSolutions - printed;
    }

    bool wantMore() const { return printed < cfg.maxSolutions; }

    // Accepts a solution over the engine problem's variables; restricts,
    // verifies, deduplicates, prints. Returns false to stop the engine.
    bool accept(const Substitution& full) {
        Substitution restricted =
            totalOn(full.restrictedTo(g.sig.variables), g.sig.variables);
        if (cfg.verify && !verifySolution(g, restricted)) {
            throw InternalError("solution failed verification against the input problem");
        }
        if (cfg.dedup) {
            for (const Substitution& seen : dedupPool) {
                if (substitutionsEquivalent(seen, restricted)) return wantMore();
            }
            dedupPool.push_back(restricted);
        }
        ++printed;
        out << "# solution " << printed << "\n";
        out << renderSubstitution(cfg.showInternal ? full : restricted);
        if (cfg.trace && !pendingTrace.empty()) {
            out << "# rule log:\n";
            for (const std::string& line : pendingTrace) out << "#   " << line << "\n";
            pendingTrace.clear();
        }
        out << "\n";
        return wantMore();
    }

    void solveBasic(const BasicProblem& b) {
        bool unification = isPureUnification(b);
        bool dismatching = isDismatchingProblem(b);
        if (unification || (dismatching && !cfg.forceLocal)) {
            if (unification) {
                FlatProblem fp = flatten(b);
                solveLocal(cfg.engine, fp, engineQuota(),
                           [&](const LocalSolution& s) { return accept(s.substitution); },
                           opts);
            } else {
                std::size_t reducedCount = 0;
                auto onReduced = [&](const FlatProblem& fp) {
                    ++reducedCount;
                    out << "# reduced problem " << reducedCount << "\n"
                        << renderFlatProblem(fp) << "# end reduced problem "
                        << reducedCount << "\n";
                };
                solveDismatching(
                    b, makeLocalEngine(cfg.engine, opts), engineQuota(),
                    [&](const Substitution& s) { return accept(s); }, cfg.threads,
                    nullptr,
                    cfg.showReduced
                        ? std::function<void(const FlatProblem&)>(onReduced)
                        : nullptr);
            }
        } else {
            // Plain disunification: only local solvability is decided.
            anyLocalOnly = true;
            FlatProblem fp = flatten(b);
            solveLocal(cfg.engine, fp, engineQuota(),
                       [&](const LocalSolution& s) { return accept(s.substitution); },
                       opts);
        }
    }
};

}  // namespace

int runSolve(const RunConfig& cfg, const std::string& problemPath, std::ostream& out,
             std::ostream& err) {
    try {
        GeneralProblem g = parseProblem(readFile(problemPath));
        SolveSession session(cfg, g, out);
        enumerateBasicProblems(g, [&](const BasicProblem& b) {
            session.solveBasic(b);
            return session.wantMore();
        });
        if (session.printed > 0) return 0;
        if (session.anyLocalOnly) {
            out << "no local solution (general solvability not decided)\n";
            return 2;
        }
        out << "unsolvable\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

int runCheck(const RunConfig& cfg, const std::string& problemPath,
             const std::string& substPath, std::ostream& out, std::ostream& err) {
    try {
        GeneralProblem g = parseProblem(readFile(problemPath));
        Substitution s = parseSubstitution(readFile(substPath), g.sig);
        for (const std::string& v : g.sig.variables) {
            if (!s.bound(v)) {
                throw Error("substitution does not bind variable " + v);
            }
        }
        if (cfg.trace) {
            PropAbstraction abs = propositionalAbstraction(g);
            for (const Statement& leaf : abs.literals) {
                bool holds = solvesStatement(leaf, s, g.sig);
                out << "# " << renderStatement(leaf) << " : "
                    << (holds ? "holds" : "fails") << "\n";
            }
        }
        bool ok = verifySolution(g, s);
        out << (ok ? "solution\n" : "not a solution\n");
        return ok ? 0 : 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

int runFlatten(const RunConfig& cfg, const std::string& problemPath, std::ostream& out,
               std::ostream& err) {
    (void)cfg;
    try {
        GeneralProblem g = parseProblem(readFile(problemPath));
        std::size_t count = 0;
        enumerateBasicProblems(g, [&](const BasicProblem& b) {
            ++count;
            if (count > 1) out << "\n";
            out << "# basic problem " << count << "\n";
            out << renderFlatProblem(flatten(b));
            return true;
        });
        if (count == 0) out << "# no basic problems: propositional skeleton unsatisfiable\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

int runEncode(const RunConfig& cfg, const std::string& problemPath, std::ostream& out,
              std::ostream& err) {
    try {
        GeneralProblem g = parseProblem(readFile(problemPath));
        std::vector<BasicProblem> basics;
        enumerateBasicProblems(g, [&](const BasicProblem& b) {
            basics.push_back(b);
            return basics.size() <= 1;
        });
        if (basics.size() != 1) {
            throw Error("encode requires a problem with exactly one basic form; got " +
                        std::string(basics.empty() ? "none" : "several"));
        }
        FlatProblem fp = variablizeDissubsumptions(flatten(basics[0]));
        auto [cnf, map] = buildClauses(fp);
        DimacsOutput dimacs = emitDimacs(cnf, map);

        std::string cnfPath = cfg.dimacsOut.empty() ? problemPath + ".cnf" : cfg.dimacsOut;
        std::string mapPath =
            cfg.varmapOut.empty() ? problemPath + ".varmap" : cfg.varmapOut;
        std::ofstream cnfFile(cnfPath, std::ios::binary);
        std::ofstream mapFile(mapPath, std::ios::binary);
        if (!cnfFile || !mapFile) throw Error("cannot write output files");
        cnfFile << dimacs.cnfText;
        mapFile << dimacs.varmapText;

        out << "# cnf: " << cnfPath << " (" << cnf.numVars << " variables, "
            << cnf.clauses.size() << " clauses)\n";
        out << "# varmap: " << mapPath << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace eldis
