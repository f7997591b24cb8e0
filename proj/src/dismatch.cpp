#include "eldis/dismatch.hpp"

#include <algorithm>
#include <future>

#include "eldis/normalize.hpp"
#include "eldis/render.hpp"
#include "eldis/subsume.hpp"

namespace eldis {

const char* ruleName(RuleId r) {
    switch (r) {
        case RuleId::RightDecomp: return "RightDecomp";
        case RuleId::LeftDecomp: return "LeftDecomp";
        case RuleId::AtomicDecomp: return "AtomicDecomp";
        case RuleId::FlattenRightGroundDissub: return "FlattenRightGroundDissub";
        case RuleId::FlattenLeftGroundSub: return "FlattenLeftGroundSub";
        case RuleId::SolveLeftGroundDissub: return "SolveLeftGroundDissub";
    }
    return "?";
}

bool isDismatchingProblem(const BasicProblem& b) {
    for (const Statement& s : b.statements) {
        if (s.kind == StatementKind::Dissub && !isGround(s.lhs, b.sig) &&
            !isGround(s.rhs, b.sig)) {
            return false;
        }
    }
    return true;
}

namespace {

bool isVariableAtom(const Atom& a, const Signature& sig) {
    return a.isName() && sig.isVariable(a.name());
}

bool isVariableTerm(const ConceptTerm& t, const Signature& sig) {
    return t.isSingleAtom() && isVariableAtom(t.atoms()[0], sig);
}

struct PreFlattened {
    BasicProblem problem;
    std::map<std::string, ConceptTerm> freshVars;
};

PreFlattened preFlatten(const BasicProblem& b) {
    FlatProblem scratch;
    scratch.sig = b.sig;
    TermFlattener fl(scratch);
    std::vector<Statement> dissubs;
    for (const Statement& s : b.statements) {
        if (s.kind == StatementKind::Sub) {
            fl.processStatement(s);
        } else {
            ConceptTerm lhs = isGround(s.lhs, b.sig) ? s.lhs : fl.flattenSide(s.lhs);
            ConceptTerm rhs = isGround(s.rhs, b.sig) ? s.rhs : fl.flattenSide(s.rhs);
            dissubs.push_back(Statement::dissub(std::move(lhs), std::move(rhs)));
        }
        fl.drainQueue();
    }
    PreFlattened out;
    out.problem.sig = scratch.sig;
    out.problem.statements = scratch.statements;
    for (const Statement& d : dissubs) insertStatement(out.problem.statements, d);
    out.freshVars = scratch.freshVars;
    return out;
}

}  // namespace

BasicProblem preFlattenDismatching(const BasicProblem& b) {
    if (!isDismatchingProblem(b)) {
        throw NotDismatching("a dissubsumption has no ground side");
    }
    return preFlatten(b).problem;
}

std::optional<RuleId> applicableRule(const Statement& s, const Signature& sig) {
    if (s.kind == StatementKind::Dissub) {
        std::size_t m = s.rhs.atoms().size();
        if (m != 1) return RuleId::RightDecomp;
        const Atom& d = s.rhs.atoms()[0];
        if (isVariableAtom(d, sig)) {
            if (isGround(s.lhs, sig)) return RuleId::SolveLeftGroundDissub;
            return std::nullopt;
        }
        std::size_t n = s.lhs.atoms().size();
        if (n != 1) return RuleId::LeftDecomp;
        const Atom& c = s.lhs.atoms()[0];
        if (!isVariableAtom(c, sig)) return RuleId::AtomicDecomp;
        if (d.isExists() && !d.arg().isName() && isGround(d.arg(), sig)) {
            return RuleId::FlattenRightGroundDissub;
        }
        return std::nullopt;
    }
    // Subsumptions: only left-ground ones with non-flat atoms are rewritten.
    if (!isVariableTerm(s.rhs, sig)) return std::nullopt;
    bool anyNonFlat = false;
    for (const Atom& a : s.lhs.atoms()) {
        if (!isGround(a, sig)) return std::nullopt;
        if (!a.isFlat()) anyNonFlat = true;
    }
    if (anyNonFlat) return RuleId::FlattenLeftGroundSub;
    return std::nullopt;
}

namespace {

struct DismatchState {
    std::vector<Statement> gamma;  // FIFO working set
    std::set<Statement> present;
    Signature sig;
    std::map<ConceptTerm, std::string> abbrevCache;  // ground subterm -> variable
    std::map<std::string, ConceptTerm> freshVars;
    std::vector<std::string> trace;

    void add(const Statement& s) {
        if (present.insert(s).second) gamma.push_back(s);
    }
    void remove(std::size_t index) {
        present.erase(gamma[index]);
        gamma.erase(gamma.begin() + static_cast<std::ptrdiff_t>(index));
    }
};

std::size_t problemMeasure(const DismatchState& st) {
    std::size_t total = 0;
    for (const Statement& s : st.gamma) {
        if (applicableRule(s, st.sig)) total += statementMeasure(s);
    }
    return total;
}

std::string abbreviateGround(DismatchState& st, const ConceptTerm& subterm) {
    auto it = st.abbrevCache.find(subterm);
    if (it != st.abbrevCache.end()) return it->second;
    std::string v = st.sig.freshVariable();
    st.abbrevCache.emplace(subterm, v);
    st.freshVars.emplace(v, subterm);
    return v;
}

// Atomic Decomposition on C !<= D for non-variable atoms. Returns false when
// case a) fails the run; otherwise appends the replacement (if any).
bool atomicDecompose(DismatchState& st, const Atom& c, const Atom& d) {
    ConceptTerm ct = ConceptTerm::single(c);
    ConceptTerm dt = ConceptTerm::single(d);
    if (isGround(c, st.sig) && isGround(d, st.sig)) {
        return !subsumes(ct, dt);  // a) fails, b) drops the statement
    }
    if (c.isName() || d.isName()) return true;  // c) a constant side always solves it
    if (c.role() != d.role()) return true;      // d) different roles
    st.add(Statement::dissub(c.arg(), d.arg()));  // e)
    return true;
}

// Applies the rule to gamma[index]; one successor per don't-know choice,
// none when every choice fails.
std::vector<DismatchState> applyRule(const DismatchState& st, std::size_t index, RuleId rule) {
    const Statement s = st.gamma[index];
    std::vector<DismatchState> out;
    auto branch = [&]() -> DismatchState& {
        out.push_back(st);
        out.back().remove(index);
        out.back().trace.push_back(std::string(ruleName(rule)) + ": " + renderStatement(s));
        return out.back();
    };

    switch (rule) {
        case RuleId::RightDecomp: {
            // m = 0 fails; otherwise choose a right-hand atom.
            for (const Atom& d : s.rhs.atoms()) {
                DismatchState& next = branch();
                next.add(Statement::dissub(s.lhs, ConceptTerm::single(d)));
            }
            break;
        }
        case RuleId::LeftDecomp: {
            DismatchState& next = branch();
            for (const Atom& c : s.lhs.atoms()) {
                next.add(Statement::dissub(ConceptTerm::single(c), s.rhs));
            }
            break;
        }
        case RuleId::AtomicDecomp: {
            DismatchState& next = branch();
            if (!atomicDecompose(next, s.lhs.atoms()[0], s.rhs.atoms()[0])) out.pop_back();
            break;
        }
        case RuleId::FlattenRightGroundDissub: {
            const Atom& d = s.rhs.atoms()[0];
            DismatchState& next = branch();
            std::string xd = abbreviateGround(next, d.arg());
            next.add(Statement::dissub(
                s.lhs, ConceptTerm::single(
                           Atom::exists(d.role(), ConceptTerm::single(Atom::name(xd))))));
            next.add(Statement::sub(d.arg(), ConceptTerm::single(Atom::name(xd))));
            break;
        }
        case RuleId::FlattenLeftGroundSub: {
            DismatchState& next = branch();
            std::vector<Atom> newLhs;
            for (const Atom& a : s.lhs.atoms()) {
                if (a.isFlat()) {
                    newLhs.push_back(a);
                    continue;
                }
                std::string xd = abbreviateGround(next, a.arg());
                newLhs.push_back(Atom::exists(a.role(), ConceptTerm::single(Atom::name(xd))));
                next.add(Statement::sub(a.arg(), ConceptTerm::single(Atom::name(xd))));
            }
            next.add(Statement::sub(ConceptTerm(std::move(newLhs)), s.rhs));
            break;
        }
        case RuleId::SolveLeftGroundDissub: {
            // Constants first, then roles, both in name order.
            for (const std::string& a : st.sig.constants) {
                ConceptTerm at = ConceptTerm::single(Atom::name(a));
                if (subsumes(s.lhs, at)) continue;  // this choice fails
                DismatchState& next = branch();
                next.trace.back() += " [constant " + a + "]";
                next.add(Statement::sub(s.rhs, at));
            }
            for (const std::string& r : st.sig.roles) {
                DismatchState& next = branch();
                std::string z = next.sig.freshVariable();
                next.trace.back() += " [role " + r + ", fresh " + z + "]";
                ConceptTerm rz =
                    ConceptTerm::single(Atom::exists(r, ConceptTerm::single(Atom::name(z))));
                next.add(Statement::sub(s.rhs, rz));
                bool ok = true;
                for (const Atom& c : s.lhs.atoms()) {
                    // The generated dissubsumptions go straight through
                    // Atomic Decomposition, as the rule prescribes. Its
                    // ground failure case cannot trigger here because
                    // 'some r.Z' is not ground.
                    if (!atomicDecompose(next, c, rz.atoms()[0])) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) out.pop_back();
            }
            break;
        }
    }
    return out;
}

bool hasLeftGroundDissub(const FlatProblem& f) {
    for (const Statement& s : f.statements) {
        if (s.kind == StatementKind::Dissub && isGround(s.lhs, f.sig) &&
            isVariableTerm(s.rhs, f.sig)) {
            return true;
        }
    }
    return false;
}

struct ReduceDriver {
    const std::function<bool(const FlatProblem&)>& yield;
    DismatchStats* stats;
    std::shared_ptr<const BasicProblem> origin;
    std::set<std::vector<Statement>> seen;

    // Returns false to stop the whole enumeration.
    bool explore(const DismatchState& st, std::size_t depth) {
        std::size_t index = 0;
        std::optional<RuleId> rule;
        for (; index < st.gamma.size(); ++index) {
            rule = applicableRule(st.gamma[index], st.sig);
            if (rule) break;
        }
        if (!rule) return emit(st);

        std::size_t before = problemMeasure(st);
        std::vector<DismatchState> next = applyRule(st, index, *rule);
        for (const DismatchState& succ : next) {
            if (stats) {
                ++stats->ruleApplications;
                if (problemMeasure(succ) >= before) ++stats->measureViolations;
                if (depth + 1 > stats->initialMeasure) ++stats->depthViolations;
            }
            if (!explore(succ, depth + 1)) return false;
        }
        return true;
    }

    bool emit(const DismatchState& st) {
        if (stats) ++stats->successfulRuns;
        FlatProblem out;
        out.sig = st.sig;
        for (const Statement& s : st.gamma) insertStatement(out.statements, s);
        out.freshVars = st.freshVars;
        out.origin = origin;
        if (!isFlatProblem(out) || hasLeftGroundDissub(out)) {
            throw InternalError("reduction produced a non-flat problem or left a "
                                "left-ground dissubsumption");
        }
        if (!seen.insert(out.statements).second) return true;  // converged branch
        return yield(out);
    }
};

}  // namespace

void reduceDismatching(const BasicProblem& b,
                       const std::function<bool(const FlatProblem&)>& yield,
                       DismatchStats* stats) {
    if (!isDismatchingProblem(b)) {
        throw NotDismatching("a dissubsumption has no ground side");
    }
    PreFlattened pre = preFlatten(b);

    DismatchState init;
    init.sig = pre.problem.sig;
    init.freshVars = pre.freshVars;
    for (const Statement& s : pre.problem.statements) init.add(s);

    ReduceDriver driver{yield, stats, std::make_shared<BasicProblem>(b), {}};
    if (stats) stats->initialMeasure = problemMeasure(init);
    driver.explore(init, 0);
}

void solveDismatching(const BasicProblem& b, const LocalEngineFn& engine,
                      std::size_t maxSolutions,
                      const std::function<bool(const Substitution&)>& yield,
                      int threads, DismatchStats* stats,
                      const std::function<void(const FlatProblem&)>& onReduced) {
    if (maxSolutions == 0) return;

    auto restrictAndCheck = [&](const LocalSolution& ls) {
        Substitution restricted =
            totalOn(ls.substitution.restrictedTo(b.sig.variables), b.sig.variables);
        if (!verifySolution(b, restricted)) {
            throw InternalError("dismatching solution failed verification on the input");
        }
        return restricted;
    };

    if (threads <= 1) {
        std::size_t count = 0;
        reduceDismatching(
            b,
            [&](const FlatProblem& fp) {
                if (onReduced) onReduced(fp);
                bool keepGoing = true;
                engine(fp, maxSolutions - count, [&](const LocalSolution& ls) {
                    Substitution restricted = restrictAndCheck(ls);
                    ++count;
                    if (!yield(restricted)) {
                        keepGoing = false;
                        return false;
                    }
                    return count < maxSolutions;
                });
                return keepGoing && count < maxSolutions;
            },
            stats);
        return;
    }

    // Parallel mode: materialize the reduced problems, solve them
    // concurrently, merge in reduction order.
    std::vector<FlatProblem> reduced;
    reduceDismatching(
        b,
        [&](const FlatProblem& fp) {
            if (onReduced) onReduced(fp);
            reduced.push_back(fp);
            return true;
        },
        stats);

    std::vector<std::future<std::vector<LocalSolution>>> jobs;
    std::size_t inFlight = 0;
    std::size_t nextJob = 0;
    std::size_t nextMerge = 0;
    std::size_t count = 0;
    auto launch = [&](const FlatProblem& fp) {
        return std::async(std::launch::async, [&fp, maxSolutions, &engine]() {
            std::vector<LocalSolution> sols;
            engine(fp, maxSolutions, [&](const LocalSolution& ls) {
                sols.push_back(ls);
                return true;
            });
            return sols;
        });
    };
    while (nextMerge < reduced.size() && count < maxSolutions) {
        while (nextJob < reduced.size() && inFlight < static_cast<std::size_t>(threads)) {
            jobs.push_back(launch(reduced[nextJob]));
            ++nextJob;
            ++inFlight;
        }
        std::vector<LocalSolution> sols = jobs[nextMerge].get();
        --inFlight;
        for (const LocalSolution& ls : sols) {
            Substitution restricted = restrictAndCheck(ls);
            ++count;
            if (!yield(restricted) || count >= maxSolutions) return;
        }
        ++nextMerge;
    }
}

}  // namespace eldis
