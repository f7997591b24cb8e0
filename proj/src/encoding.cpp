#include "eldis/encoding.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "eldis/render.hpp"
#include "eldis/subsume.hpp"

namespace eldis {

SatVarMap::SatVarMap(const AtomUniverse& uni) : uni_(uni) {}

std::size_t SatVarMap::atomIndex(const Atom& a) const {
    auto it = std::lower_bound(uni_.at.begin(), uni_.at.end(), a);
    if (it == uni_.at.end() || !(*it == a)) {
        throw InternalError("atom not in universe: " + renderAtom(a));
    }
    return static_cast<std::size_t>(it - uni_.at.begin());
}

std::size_t SatVarMap::nvAtomIndex(const Atom& a) const {
    auto it = std::lower_bound(uni_.atNv.begin(), uni_.atNv.end(), a);
    if (it == uni_.atNv.end() || !(*it == a)) {
        throw InternalError("atom not in the non-variable atoms: " + renderAtom(a));
    }
    return static_cast<std::size_t>(it - uni_.atNv.begin());
}

std::size_t SatVarMap::varIndex(const std::string& v) const {
    auto it = std::lower_bound(uni_.vars.begin(), uni_.vars.end(), v);
    if (it == uni_.vars.end() || *it != v) {
        throw InternalError("variable not in universe: " + v);
    }
    return static_cast<std::size_t>(it - uni_.vars.begin());
}

int SatVarMap::subVar(std::size_t atomC, std::size_t atomD) const {
    return static_cast<int>(1 + atomC * uni_.at.size() + atomD);
}

int SatVarMap::gtVar(std::size_t varX, std::size_t varY) const {
    std::size_t base = uni_.at.size() * uni_.at.size();
    return static_cast<int>(1 + base + varX * uni_.vars.size() + varY);
}

int SatVarMap::pVar(std::size_t atomC, std::size_t varX, std::size_t atomNvD) const {
    std::size_t base =
        uni_.at.size() * uni_.at.size() + uni_.vars.size() * uni_.vars.size();
    return static_cast<int>(1 + base +
                            (atomC * uni_.vars.size() + varX) * uni_.atNv.size() +
                            atomNvD);
}

int SatVarMap::totalVars() const {
    return static_cast<int>(uni_.at.size() * uni_.at.size() +
                            uni_.vars.size() * uni_.vars.size() +
                            uni_.at.size() * uni_.vars.size() * uni_.atNv.size());
}

std::pair<CnfInstance, SatVarMap> buildClauses(const FlatProblem& f) {
    AtomUniverse uni = atomUniverse(f);
    SatVarMap map(uni);
    CnfInstance cnf;
    cnf.numVars = map.totalVars();

    const std::size_t nAt = uni.at.size();
    const std::size_t nNv = uni.atNv.size();
    const std::size_t nVar = uni.vars.size();

    auto isVarAtom = [&](const Atom& a) {
        return a.isName() && f.sig.isVariable(a.name());
    };

    // (I) Translation of the problem.
    for (const Statement& s : f.statements) {
        if (s.kind == StatementKind::Sub) {
            const Atom& d = s.rhs.atoms()[0];
            if (!isVarAtom(d)) {
                std::vector<int> clause;
                std::size_t di = map.atomIndex(d);
                for (const Atom& c : s.lhs.atoms()) {
                    clause.push_back(map.subVar(map.atomIndex(c), di));
                }
                cnf.addClause(std::move(clause));  // may be empty: top <= D
            } else {
                std::size_t xi = map.atomIndex(d);
                for (std::size_t e = 0; e < nNv; ++e) {
                    std::size_t ei = map.atomIndex(uni.atNv[e]);
                    std::vector<int> clause{-map.subVar(xi, ei)};
                    for (const Atom& c : s.lhs.atoms()) {
                        clause.push_back(map.subVar(map.atomIndex(c), ei));
                    }
                    cnf.addClause(std::move(clause));
                }
            }
        } else {
            if (!s.lhs.isSingleAtom() || !isVarAtom(s.lhs.atoms()[0]) ||
                !s.rhs.isSingleAtom() || !isVarAtom(s.rhs.atoms()[0])) {
                throw NotVariablized("dissubsumption is not between two variables: " +
                                     renderStatement(s));
            }
            cnf.addClause({-map.subVar(map.atomIndex(s.lhs.atoms()[0]),
                                       map.atomIndex(s.rhs.atoms()[0]))});
        }
    }

    // (II) Properties of subsumption between non-variable atoms.
    std::vector<std::size_t> constants;  // indices into atNv
    std::vector<std::size_t> exists;
    for (std::size_t i = 0; i < nNv; ++i) {
        (uni.atNv[i].isName() ? constants : exists).push_back(i);
    }
    auto nvAtomId = [&](std::size_t i) { return map.atomIndex(uni.atNv[i]); };
    for (std::size_t a : constants) {
        cnf.addClause({map.subVar(nvAtomId(a), nvAtomId(a))});
        for (std::size_t b : constants) {
            if (a != b) cnf.addClause({-map.subVar(nvAtomId(a), nvAtomId(b))});
        }
        for (std::size_t e : exists) {
            cnf.addClause({-map.subVar(nvAtomId(a), nvAtomId(e))});
            cnf.addClause({-map.subVar(nvAtomId(e), nvAtomId(a))});
        }
    }
    for (std::size_t e1 : exists) {
        const Atom& c = uni.atNv[e1];
        for (std::size_t e2 : exists) {
            const Atom& d = uni.atNv[e2];
            int outer = map.subVar(nvAtomId(e1), nvAtomId(e2));
            if (c.role() != d.role()) {
                cnf.addClause({-outer});
            } else {
                int inner = map.subVar(map.atomIndex(c.arg().atoms()[0]),
                                       map.atomIndex(d.arg().atoms()[0]));
                cnf.addClause({-outer, inner});
                cnf.addClause({-inner, outer});
            }
        }
    }

    // (III) Transitivity of subsumption over all atom triples.
    for (std::size_t i = 0; i < nAt; ++i) {
        for (std::size_t j = 0; j < nAt; ++j) {
            for (std::size_t k = 0; k < nAt; ++k) {
                cnf.addClause({-map.subVar(i, j), -map.subVar(j, k), map.subVar(i, k)});
            }
        }
    }

    // (IV) Dissubsumptions with a variable right-hand side.
    for (std::size_t c = 0; c < nAt; ++c) {
        for (std::size_t x = 0; x < nVar; ++x) {
            std::size_t xi = map.atomIndex(Atom::name(uni.vars[x]));
            std::vector<int> big{map.subVar(c, xi)};
            for (std::size_t d = 0; d < nNv; ++d) {
                int p = map.pVar(c, x, d);
                big.push_back(p);
                cnf.addClause({-p, map.subVar(xi, nvAtomId(d))});
                cnf.addClause({-p, -map.subVar(c, nvAtomId(d))});
            }
            cnf.addClause(std::move(big));
        }
    }

    // (V) > is a strict partial order compatible with the subsumptions.
    for (std::size_t x = 0; x < nVar; ++x) {
        cnf.addClause({-map.gtVar(x, x)});
        for (std::size_t y = 0; y < nVar; ++y) {
            for (std::size_t z = 0; z < nVar; ++z) {
                cnf.addClause({-map.gtVar(x, y), -map.gtVar(y, z), map.gtVar(x, z)});
            }
        }
    }
    for (std::size_t x = 0; x < nVar; ++x) {
        std::size_t xi = map.atomIndex(Atom::name(uni.vars[x]));
        for (std::size_t i = 0; i < nAt; ++i) {
            const Atom& a = uni.at[i];
            if (!a.isExists()) continue;
            const Atom& inner = a.arg().atoms()[0];
            if (!f.sig.isVariable(inner.name())) continue;
            cnf.addClause({-map.subVar(xi, i), map.gtVar(x, map.varIndex(inner.name()))});
        }
    }

    return {std::move(cnf), std::move(map)};
}

LocalSolution decode(const std::vector<bool>& model, const SatVarMap& map,
                     const Signature& sig) {
    const AtomUniverse& uni = map.universe();
    Assignment assign;
    for (std::size_t x = 0; x < uni.vars.size(); ++x) {
        std::size_t xi = map.atomIndex(Atom::name(uni.vars[x]));
        std::set<Atom>& sx = assign.sets[uni.vars[x]];
        for (const Atom& d : uni.atNv) {
            int v = map.subVar(xi, map.atomIndex(d));
            if (model[static_cast<std::size_t>(v - 1)]) sx.insert(d);
        }
    }
    if (!isAcyclic(assign, sig)) {
        throw InternalEncodingError("decoded assignment has a dependency cycle");
    }
    Substitution sigma = inducedSubstitution(assign, sig);
    return {std::move(assign), std::move(sigma)};
}

SatBackend builtinSatBackend(const Deadline* deadline) {
    return [deadline](const CnfInstance& cnf) { return satSolve(cnf, deadline); };
}

void enumerateModels(const FlatProblem& f, std::size_t maxSolutions,
                     const std::function<bool(const LocalSolution&)>& yield,
                     const SatBackend& backend) {
    if (maxSolutions == 0) return;
    auto [cnf, map] = buildClauses(f);
    const AtomUniverse& uni = map.universe();
    SatBackend solve = backend ? backend : builtinSatBackend();

    std::size_t found = 0;
    for (;;) {
        SatResult res = solve(cnf);
        if (!res.sat()) return;
        LocalSolution sol = decode(res.model, map, f.sig);
        if (!verifySolution(f.statements, sol.substitution, f.sig)) {
            throw InternalEncodingError("decoded model does not solve the problem");
        }
        ++found;
        if (!yield(sol) || found >= maxSolutions) return;

        // Block the current assignment pattern. Without variables or
        // non-variable atoms the projection is empty and the single
        // solution is already out.
        std::vector<int> blocking;
        for (std::size_t x = 0; x < uni.vars.size(); ++x) {
            std::size_t xi = map.atomIndex(Atom::name(uni.vars[x]));
            for (const Atom& d : uni.atNv) {
                int v = map.subVar(xi, map.atomIndex(d));
                blocking.push_back(res.model[static_cast<std::size_t>(v - 1)] ? -v : v);
            }
        }
        if (blocking.empty()) return;
        cnf.addClause(std::move(blocking));
    }
}

namespace {

// sigma applied to a single atom of the universe.
ConceptTerm instantiate(const Substitution& s, const Atom& a, const Signature& sig) {
    return applySubstitution(s, ConceptTerm::single(a), sig);
}

// True iff t is subsumed by some chain of existential restrictions (length
// >= 1) around target. Recursion depth is bounded by the role depth of t.
bool reachesUnder(const ConceptTerm& t, const ConceptTerm& target) {
    for (const Atom& a : t.atoms()) {
        if (!a.isExists()) continue;
        if (subsumes(a.arg(), target) || reachesUnder(a.arg(), target)) return true;
    }
    return false;
}

}  // namespace

std::vector<bool> encodeSolutionAsValuation(const Substitution& s, const FlatProblem& f,
                                            const SatVarMap& map) {
    if (!verifySolution(f.statements, s, f.sig)) {
        throw NotASolution("substitution does not solve the flat problem");
    }
    const AtomUniverse& uni = map.universe();
    std::vector<bool> val(static_cast<std::size_t>(map.totalVars()), false);
    auto set = [&](int v, bool b) { val[static_cast<std::size_t>(v - 1)] = b; };

    std::vector<ConceptTerm> inst;
    inst.reserve(uni.at.size());
    for (const Atom& a : uni.at) inst.push_back(instantiate(s, a, f.sig));

    for (std::size_t i = 0; i < uni.at.size(); ++i) {
        for (std::size_t j = 0; j < uni.at.size(); ++j) {
            set(map.subVar(i, j), subsumes(inst[i], inst[j]));
        }
    }
    for (std::size_t c = 0; c < uni.at.size(); ++c) {
        for (std::size_t x = 0; x < uni.vars.size(); ++x) {
            const ConceptTerm& sx = s.at(uni.vars[x]);
            for (std::size_t d = 0; d < uni.atNv.size(); ++d) {
                ConceptTerm sd = instantiate(s, uni.atNv[d], f.sig);
                set(map.pVar(c, x, d), subsumes(sx, sd) && !subsumes(inst[c], sd));
            }
        }
    }
    for (std::size_t x = 0; x < uni.vars.size(); ++x) {
        for (std::size_t y = 0; y < uni.vars.size(); ++y) {
            set(map.gtVar(x, y), reachesUnder(s.at(uni.vars[x]), s.at(uni.vars[y])));
        }
    }
    return val;
}

bool valuationSatisfies(const CnfInstance& cnf, const std::vector<bool>& valuation) {
    for (const std::vector<int>& clause : cnf.clauses) {
        bool satisfied = false;
        for (int lit : clause) {
            bool v = valuation[static_cast<std::size_t>(std::abs(lit) - 1)];
            if ((lit > 0) == v) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied) return false;
    }
    return true;
}

DimacsOutput emitDimacs(const CnfInstance& cnf, const SatVarMap& map) {
    std::ostringstream cnfText;
    cnfText << "p cnf " << cnf.numVars << " " << cnf.clauses.size() << "\n";
    for (const std::vector<int>& clause : cnf.clauses) {
        for (int lit : clause) cnfText << lit << " ";
        cnfText << "0\n";
    }

    const AtomUniverse& uni = map.universe();
    std::ostringstream varmap;
    for (std::size_t i = 0; i < uni.at.size(); ++i) {
        for (std::size_t j = 0; j < uni.at.size(); ++j) {
            varmap << map.subVar(i, j) << " SUB " << renderAtom(uni.at[i]) << " | "
                   << renderAtom(uni.at[j]) << "\n";
        }
    }
    for (std::size_t x = 0; x < uni.vars.size(); ++x) {
        for (std::size_t y = 0; y < uni.vars.size(); ++y) {
            varmap << map.gtVar(x, y) << " GT " << uni.vars[x] << " | " << uni.vars[y]
                   << "\n";
        }
    }
    for (std::size_t c = 0; c < uni.at.size(); ++c) {
        for (std::size_t x = 0; x < uni.vars.size(); ++x) {
            for (std::size_t d = 0; d < uni.atNv.size(); ++d) {
                varmap << map.pVar(c, x, d) << " P " << renderAtom(uni.at[c]) << " | "
                       << uni.vars[x] << " | " << renderAtom(uni.atNv[d]) << "\n";
            }
        }
    }
    return {cnfText.str(), varmap.str()};
}

SatResult parseExternalModel(const std::string& text, const CnfInstance& cnf) {
    std::istringstream in(text);
    std::string line;
    bool sawStatus = false;
    bool sat = false;
    std::vector<bool> model(static_cast<std::size_t>(cnf.numVars), false);
    while (std::getline(in, line)) {
        if (line.rfind("s ", 0) == 0) {
            std::string status = line.substr(2);
            while (!status.empty() && (status.back() == '\r' || status.back() == ' ')) {
                status.pop_back();
            }
            if (status == "SATISFIABLE") {
                sat = true;
            } else if (status == "UNSATISFIABLE") {
                sat = false;
            } else {
                throw MalformedSolverOutput("unrecognized status line: " + line);
            }
            sawStatus = true;
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            std::istringstream lits(line.substr(1));
            long lit = 0;
            while (lits >> lit) {
                if (lit == 0) continue;
                long v = lit > 0 ? lit : -lit;
                if (v > cnf.numVars) {
                    throw MalformedSolverOutput("literal out of range: " +
                                                std::to_string(lit));
                }
                model[static_cast<std::size_t>(v - 1)] = lit > 0;
            }
        }
    }
    if (!sawStatus) throw MalformedSolverOutput("no 's' status line in solver output");
    if (!sat) return {SatStatus::Unsat, {}};
    return {SatStatus::Sat, std::move(model)};
}

SatBackend externalSatBackend(std::string commandTemplate) {
    return [commandTemplate](const CnfInstance& cnf) {
        char path[] = "/tmp/eldis-XXXXXX";
        int fd = mkstemp(path);
        if (fd < 0) throw ExternalSolverError(-1, "cannot create temporary CNF file");

        std::ostringstream text;
        text << "p cnf " << cnf.numVars << " " << cnf.clauses.size() << "\n";
        for (const std::vector<int>& clause : cnf.clauses) {
            for (int lit : clause) text << lit << " ";
            text << "0\n";
        }
        std::string data = text.str();
        FILE* file = fdopen(fd, "w");
        if (file == nullptr || std::fwrite(data.data(), 1, data.size(), file) != data.size()) {
            if (file) std::fclose(file);
            std::remove(path);
            throw ExternalSolverError(-1, "cannot write temporary CNF file");
        }
        std::fclose(file);

        std::string cmd = commandTemplate;
        std::size_t placeholder = cmd.find("{}");
        if (placeholder != std::string::npos) {
            cmd.replace(placeholder, 2, path);
        } else {
            cmd += " ";
            cmd += path;
        }
        cmd += " 2>/dev/null";

        FILE* pipe = popen(cmd.c_str(), "r");
        if (pipe == nullptr) {
            std::remove(path);
            throw ExternalSolverError(-1, "cannot run: " + cmd);
        }
        std::string output;
        char buf[4096];
        std::size_t got = 0;
        while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
        pclose(pipe);  // exit status intentionally ignored
        std::remove(path);
        return parseExternalModel(output, cnf);
    };
}

}  // namespace eldis
