#include "eldis/goal.hpp"

#include <algorithm>

#include "eldis/render.hpp"
#include "eldis/subsume.hpp"

namespace eldis {

void prepareGoalInput(const FlatProblem& f,
                      const std::function<bool(const FlatProblem&)>& yield) {
    std::vector<Statement> fixed;
    std::vector<Statement> multi;  // dissubsumptions needing a choice
    for (const Statement& s : f.statements) {
        if (s.kind == StatementKind::Dissub && s.rhs.atoms().size() != 1) {
            if (s.rhs.isTop()) return;  // m = 0 fails every run
            multi.push_back(s);
        } else {
            insertStatement(fixed, s);
        }
    }

    std::set<std::vector<Statement>> seen;
    std::vector<Statement> chosen = fixed;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == multi.size()) {
            if (!seen.insert(chosen).second) return true;
            FlatProblem out;
            out.sig = f.sig;
            out.statements = chosen;
            out.freshVars = f.freshVars;
            out.origin = f.origin;
            return yield(out);
        }
        for (const Atom& d : multi[i].rhs.atoms()) {
            Statement pick = Statement::dissub(multi[i].lhs, ConceptTerm::single(d));
            bool added = insertStatement(chosen, pick);
            if (!rec(i + 1)) return false;
            if (added) {
                chosen.erase(std::find(chosen.begin(), chosen.end(), pick));
            }
        }
        return true;
    };
    rec(0);
}

namespace {

bool isVariableAtom(const Atom& a, const Signature& sig) {
    return a.isName() && sig.isVariable(a.name());
}

bool isVariableTerm(const ConceptTerm& t, const Signature& sig) {
    return t.isSingleAtom() && isVariableAtom(t.atoms()[0], sig);
}

}  // namespace

std::optional<std::size_t> GoalState::firstUnsolved() const {
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (!gamma[i].solved) return i;
    }
    return std::nullopt;
}

enum class GoalSearch::EagerRule {
    GroundSolving,
    Solving,
    Extension,
    TopSolving,
    LeftDecomposition,
    AtomicDecomposition,
};

namespace {

const char* eagerName(int r) {
    switch (r) {
        case 0: return "EagerGroundSolving";
        case 1: return "EagerSolving";
        case 2: return "EagerExtension";
        case 3: return "EagerTopSolving";
        case 4: return "EagerLeftDecomposition";
        case 5: return "EagerAtomicDecomposition";
    }
    return "?";
}

}  // namespace

GoalSearch::GoalSearch(const FlatProblem& f) : sig_(f.sig), uni_(atomUniverse(f)) {
    // Per-branch application bound: each application solves one unsolved
    // statement and statements are never unsolved again, so the number of
    // distinct statements that can ever appear bounds every branch.
    std::size_t nStatements = f.statements.size();
    std::size_t nAt = uni_.at.size();
    budget_ = nStatements * (1 + 2 * uni_.atNv.size()) + 2 * nAt * nAt + 8;
}

bool GoalSearch::initiallySolvedShape(const Statement& s) const {
    if (s.kind == StatementKind::Sub) return isVariableTerm(s.rhs, sig_);
    return isVariableTerm(s.lhs, sig_) && s.rhs.isSingleAtom() &&
           !isVariableAtom(s.rhs.atoms()[0], sig_);
}

GoalState GoalSearch::initialState(const FlatProblem& prepared) const {
    GoalState st;
    for (const std::string& v : uni_.vars) st.assign[v] = {};
    for (const Statement& s : prepared.statements) addStatement(st, s);
    return st;
}

void GoalSearch::addStatement(GoalState& st, const Statement& s) const {
    if (st.index.count(s) != 0) return;
    st.index.emplace(s, st.gamma.size());
    st.gamma.push_back({s, initiallySolvedShape(s)});
}

void GoalSearch::expand(GoalState& st, const std::string& x) const {
    const std::set<Atom> sx = st.assign.at(x);  // copy: gamma grows below
    std::size_t snapshot = st.gamma.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
        Statement s = st.gamma[i].st;
        if (s.kind == StatementKind::Sub) {
            if (!isVariableTerm(s.rhs, sig_) || s.rhs.atoms()[0].name() != x) continue;
            for (const Atom& e : sx) {
                addStatement(st, Statement::sub(s.lhs, ConceptTerm::single(e)));
            }
        } else {
            if (!isVariableTerm(s.lhs, sig_) || s.lhs.atoms()[0].name() != x) continue;
            if (!s.rhs.isSingleAtom() || isVariableAtom(s.rhs.atoms()[0], sig_)) continue;
            for (const Atom& e : sx) {
                addStatement(st, Statement::dissub(ConceptTerm::single(e), s.rhs));
            }
        }
    }
}

bool GoalSearch::extendAssignment(GoalState& st, const std::string& x, const Atom& d) const {
    if (isVariableAtom(d, sig_) ||
        !std::binary_search(uni_.atNv.begin(), uni_.atNv.end(), d)) {
        throw InternalError("assignment target outside the non-variable atoms");
    }
    st.assign.at(x).insert(d);
    Assignment a;
    a.sets = st.assign;
    if (!isAcyclic(a, sig_)) return false;
    expand(st, x);
    return true;
}

std::optional<GoalSearch::EagerRule> GoalSearch::eagerRuleFor(const GoalState& st,
                                                              const Statement& s) const {
    const auto& lhsAtoms = s.lhs.atoms();
    bool singleRhs = s.rhs.isSingleAtom();
    if (isGround(s, sig_)) return EagerRule::GroundSolving;
    if (singleRhs) {
        const Atom& d = s.rhs.atoms()[0];
        for (const Atom& c : lhsAtoms) {
            if (c == d) return EagerRule::Solving;
            if (isVariableAtom(c, sig_) && st.assign.at(c.name()).count(d) != 0) {
                return EagerRule::Solving;
            }
        }
    }
    if (s.kind == StatementKind::Sub) {
        for (const Atom& c : lhsAtoms) {
            if (!isVariableAtom(c, sig_)) continue;
            const std::set<Atom>& sc = st.assign.at(c.name());
            bool othersIn = true;
            for (const Atom& other : lhsAtoms) {
                if (other == c) continue;
                if (sc.count(other) == 0) {
                    othersIn = false;
                    break;
                }
            }
            if (othersIn) return EagerRule::Extension;
        }
        return std::nullopt;
    }
    if (s.rhs.isTop()) return EagerRule::TopSolving;
    if (!singleRhs) return std::nullopt;
    const Atom& d = s.rhs.atoms()[0];
    if (isVariableAtom(d, sig_)) return std::nullopt;
    if (lhsAtoms.size() != 1) return EagerRule::LeftDecomposition;
    if (!isVariableAtom(lhsAtoms[0], sig_)) return EagerRule::AtomicDecomposition;
    return std::nullopt;
}

bool GoalSearch::applyEager(GoalState& st, std::size_t gi, EagerRule rule) const {
    Statement s = st.gamma[gi].st;
    st.trace.push_back(std::string(eagerName(static_cast<int>(rule))) + ": " +
                       renderStatement(s));
    ++st.steps;
    if (st.steps > budget_) {
        throw InternalError("goal engine exceeded its step budget");
    }
    switch (rule) {
        case EagerRule::GroundSolving: {
            bool holds = subsumes(s.lhs, s.rhs);
            if (s.kind == StatementKind::Dissub) holds = !holds;
            if (!holds) return false;
            break;
        }
        case EagerRule::Solving:
            if (s.kind == StatementKind::Dissub) return false;
            break;
        case EagerRule::Extension: {
            const Atom& d = s.rhs.atoms()[0];
            std::string x;
            for (const Atom& c : s.lhs.atoms()) {
                if (!isVariableAtom(c, sig_)) continue;
                const std::set<Atom>& sc = st.assign.at(c.name());
                bool othersIn = true;
                for (const Atom& other : s.lhs.atoms()) {
                    if (other == c) continue;
                    if (sc.count(other) == 0) {
                        othersIn = false;
                        break;
                    }
                }
                if (othersIn) {
                    x = c.name();
                    break;
                }
            }
            if (!extendAssignment(st, x, d)) return false;
            break;
        }
        case EagerRule::TopSolving:
            return false;
        case EagerRule::LeftDecomposition:
            for (const Atom& c : s.lhs.atoms()) {
                addStatement(st, Statement::dissub(ConceptTerm::single(c), s.rhs));
                if (isVariableAtom(c, sig_)) expand(st, c.name());
            }
            break;
        case EagerRule::AtomicDecomposition: {
            const Atom& c = s.lhs.atoms()[0];
            const Atom& d = s.rhs.atoms()[0];
            if (isGround(c, sig_) && isGround(d, sig_)) {
                if (subsumes(ConceptTerm::single(c), ConceptTerm::single(d))) return false;
                break;  // holds under every substitution
            }
            if (c.isName() || d.isName()) break;  // a constant side solves it
            if (c.role() != d.role()) break;      // different roles
            const Atom& cArg = c.arg().atoms()[0];
            const Atom& dArg = d.arg().atoms()[0];
            addStatement(st, Statement::dissub(c.arg(), d.arg()));
            if (isVariableAtom(cArg, sig_) && !isVariableAtom(dArg, sig_)) {
                expand(st, cArg.name());
            }
            break;
        }
    }
    st.gamma[gi].solved = true;
    return true;
}

GoalSearch::StepResult GoalSearch::eagerStep(GoalState& st) const {
    for (std::size_t i = 0; i < st.gamma.size(); ++i) {
        if (st.gamma[i].solved) continue;
        if (auto rule = eagerRuleFor(st, st.gamma[i].st)) {
            return applyEager(st, i, *rule) ? StepResult::Progress : StepResult::Fail;
        }
    }
    return StepResult::NoEagerApplicable;
}

std::vector<GoalState> GoalSearch::nondetBranches(const GoalState& st,
                                                  std::size_t gi) const {
    const Statement s = st.gamma[gi].st;
    std::vector<GoalState> out;
    auto fork = [&](const std::string& label) -> GoalState& {
        out.push_back(st);
        out.back().trace.push_back(label + ": " + renderStatement(s));
        ++out.back().steps;
        return out.back();
    };
    auto abandon = [&]() { out.pop_back(); };

    if (s.kind == StatementKind::Sub) {
        const Atom& d = s.rhs.atoms()[0];
        if (d.isExists()) {
            for (const Atom& c : s.lhs.atoms()) {
                if (!c.isExists() || c.role() != d.role()) continue;
                GoalState& next = fork("Decomposition");
                addStatement(next, Statement::sub(c.arg(), d.arg()));
                const Atom& dArg = d.arg().atoms()[0];
                if (isVariableAtom(dArg, sig_)) expand(next, dArg.name());
                next.gamma[gi].solved = true;
            }
        }
        for (const Atom& c : s.lhs.atoms()) {
            if (!isVariableAtom(c, sig_)) continue;
            GoalState& next = fork("Extension");
            if (!extendAssignment(next, c.name(), d)) {
                abandon();
                continue;
            }
            next.gamma[gi].solved = true;
        }
        return out;
    }

    // Unsolved dissubsumption with no eager rule: the right-hand side is a
    // single variable.
    if (!isVariableTerm(s.rhs, sig_)) {
        throw InternalError("unsolved dissubsumption out of shape: " + renderStatement(s));
    }
    const std::string x = s.rhs.atoms()[0].name();
    for (const Atom& d : uni_.atNv) {
        GoalState& next = fork("LocalExtension[" + renderAtom(d) + "]");
        if (!extendAssignment(next, x, d)) {
            abandon();
            continue;
        }
        addStatement(next, Statement::dissub(s.lhs, ConceptTerm::single(d)));
        expand(next, x);
        if (isVariableTerm(s.lhs, sig_)) expand(next, s.lhs.atoms()[0].name());
        next.gamma[gi].solved = true;
    }
    return out;
}

namespace {

// Depth-first driver over the stepper.
class GoalDriver {
public:
    GoalDriver(const FlatProblem& original, std::size_t maxSolutions,
               const std::function<bool(const GoalEmission&)>& yield, GoalStats* stats,
               const Deadline* deadline)
        : f_(original), search_(original), maxSolutions_(maxSolutions), yield_(yield),
          stats_(stats), deadline_(deadline) {
        if (stats_) stats_->stepBudget = search_.stepBudget();
    }

    bool run(const FlatProblem& prepared) { return explore(search_.initialState(prepared)); }

    bool done() const { return emitted_ >= maxSolutions_; }

private:
    bool explore(GoalState st) {
        checkDeadline(deadline_, "goal engine");
        for (;;) {
            GoalSearch::StepResult r = search_.eagerStep(st);
            if (r == GoalSearch::StepResult::Fail) return true;  // branch dead
            if (r == GoalSearch::StepResult::Progress) {
                if (stats_) ++stats_->ruleApplications;
                continue;
            }
            std::optional<std::size_t> unsolved = st.firstUnsolved();
            if (!unsolved) return emit(st);

            std::vector<GoalState> branches = search_.nondetBranches(st, *unsolved);
            if (stats_) stats_->ruleApplications += branches.size();
            for (GoalState& next : branches) {
                if (!explore(std::move(next))) return false;
                if (done()) return false;
            }
            return true;  // no branch left; failure for this path
        }
    }

    bool emit(const GoalState& st) {
        Assignment a;
        a.sets = st.assign;
        if (!isAcyclic(a, f_.sig)) {
            throw InternalError("goal engine produced a cyclic assignment");
        }
        Substitution sigma = inducedSubstitution(a, f_.sig);
        if (!verifySolution(f_.statements, sigma, f_.sig)) {
            throw InternalError("goal engine emission failed verification");
        }
        ++emitted_;
        if (stats_) ++stats_->emissions;
        GoalEmission e{LocalSolution{std::move(a), std::move(sigma)}, st.trace};
        if (!yield_(e)) {
            emitted_ = maxSolutions_;
            return false;
        }
        return !done();
    }

    const FlatProblem& f_;
    GoalSearch search_;
    std::size_t maxSolutions_;
    const std::function<bool(const GoalEmission&)>& yield_;
    GoalStats* stats_;
    const Deadline* deadline_;
    std::size_t emitted_ = 0;
};

}  // namespace

void solveGoalOriented(const FlatProblem& f, std::size_t maxSolutions,
                       const std::function<bool(const GoalEmission&)>& yield,
                       GoalStats* stats, const Deadline* deadline) {
    if (!isFlatProblem(f)) throw Error("goal engine requires a flat problem");
    if (maxSolutions == 0) return;

    GoalDriver driver(f, maxSolutions, yield, stats, deadline);
    bool needPrepare = false;
    for (const Statement& s : f.statements) {
        if (s.kind == StatementKind::Dissub && s.rhs.atoms().size() != 1) {
            needPrepare = true;
            break;
        }
    }
    if (!needPrepare) {
        driver.run(f);
        return;
    }
    prepareGoalInput(f, [&](const FlatProblem& p) {
        if (!driver.run(p)) return false;
        return !driver.done();
    });
}

}  // namespace eldis
