#include "eldis/local.hpp"

#include <algorithm>

#include "eldis/subsume.hpp"

namespace eldis {

namespace {

void collectFromTerm(const ConceptTerm& t, const Signature& sig, std::set<Atom>& at,
                     std::set<std::string>& vars) {
    for (const Atom& a : t.atoms()) {
        at.insert(a);
        if (a.isName()) {
            if (sig.isVariable(a.name())) vars.insert(a.name());
        } else {
            // Flat atoms nest exactly one name, which is itself an atom
            // occurring as a subterm.
            const Atom& inner = a.arg().atoms()[0];
            at.insert(inner);
            if (sig.isVariable(inner.name())) vars.insert(inner.name());
        }
    }
}

}  // namespace

AtomUniverse atomUniverse(const FlatProblem& f) {
    std::set<Atom> at;
    std::set<std::string> vars;
    for (const Statement& s : f.statements) {
        collectFromTerm(s.lhs, f.sig, at, vars);
        collectFromTerm(s.rhs, f.sig, at, vars);
    }
    AtomUniverse uni;
    uni.at.assign(at.begin(), at.end());
    uni.vars.assign(vars.begin(), vars.end());
    for (const Atom& a : uni.at) {
        if (a.isName() && f.sig.isVariable(a.name())) continue;
        uni.atNv.push_back(a);
    }
    return uni;
}

namespace {

// Variables mentioned inside an assignment atom (flat: at most one, in the
// argument position of an existential restriction).
std::vector<std::string> atomDependencies(const Atom& a, const Signature& sig) {
    std::vector<std::string> deps;
    if (a.isExists()) {
        const Atom& inner = a.arg().atoms()[0];
        if (sig.isVariable(inner.name())) deps.push_back(inner.name());
    }
    return deps;
}

enum class Mark { White, Grey, Black };

bool dfsAcyclic(const std::string& x, const Assignment& s, const Signature& sig,
                std::map<std::string, Mark>& marks) {
    marks[x] = Mark::Grey;
    auto it = s.sets.find(x);
    if (it != s.sets.end()) {
        for (const Atom& a : it->second) {
            for (const std::string& y : atomDependencies(a, sig)) {
                auto m = marks.find(y);
                Mark my = m == marks.end() ? Mark::White : m->second;
                if (my == Mark::Grey) return false;
                if (my == Mark::White && !dfsAcyclic(y, s, sig, marks)) return false;
            }
        }
    }
    marks[x] = Mark::Black;
    return true;
}

}  // namespace

bool isAcyclic(const Assignment& s, const Signature& sig) {
    std::map<std::string, Mark> marks;
    for (const auto& [x, atoms] : s.sets) {
        (void)atoms;
        auto m = marks.find(x);
        if (m == marks.end() || m->second == Mark::White) {
            if (!dfsAcyclic(x, s, sig, marks)) return false;
        }
    }
    return true;
}

Substitution inducedSubstitution(const Assignment& s, const Signature& sig) {
    if (!isAcyclic(s, sig)) throw CyclicAssignment("assignment dependency order has a cycle");
    Substitution out;
    // Bottom-up along the dependency order: resolve a variable once all the
    // variables below it are bound.
    std::vector<std::string> pending;
    for (const auto& [x, atoms] : s.sets) {
        (void)atoms;
        pending.push_back(x);
    }
    while (!pending.empty()) {
        bool progress = false;
        std::vector<std::string> still;
        for (const std::string& x : pending) {
            const std::set<Atom>& atoms = s.sets.at(x);
            bool ready = true;
            for (const Atom& a : atoms) {
                for (const std::string& y : atomDependencies(a, sig)) {
                    if (!out.bound(y)) {
                        ready = false;
                        break;
                    }
                }
                if (!ready) break;
            }
            if (!ready) {
                still.push_back(x);
                continue;
            }
            ConceptTerm conj(std::vector<Atom>(atoms.begin(), atoms.end()));
            out.bind(x, applySubstitution(out, conj, sig));
            progress = true;
        }
        if (!progress) throw InternalError("induced substitution made no progress");
        pending = std::move(still);
    }
    return out;
}

bool solvesStatement(const Statement& st, const Substitution& s, const Signature& sig) {
    bool sub = subsumes(applySubstitution(s, st.lhs, sig), applySubstitution(s, st.rhs, sig));
    return st.kind == StatementKind::Sub ? sub : !sub;
}

namespace {

bool evalFormula(const Formula& f, const Substitution& s, const Signature& sig) {
    switch (f.kind) {
        case Formula::Kind::Leaf:
            return solvesStatement(*f.leaf, s, sig);
        case Formula::Kind::Not:
            return !evalFormula(f.children[0], s, sig);
        case Formula::Kind::And:
            for (const Formula& c : f.children) {
                if (!evalFormula(c, s, sig)) return false;
            }
            return true;
        case Formula::Kind::Or:
            for (const Formula& c : f.children) {
                if (evalFormula(c, s, sig)) return true;
            }
            return false;
    }
    return false;
}

}  // namespace

bool verifySolution(const GeneralProblem& p, const Substitution& s) {
    return evalFormula(p.formula, s, p.sig);
}

bool verifySolution(const BasicProblem& p, const Substitution& s) {
    return verifySolution(p.statements, s, p.sig);
}

bool verifySolution(const std::vector<Statement>& statements, const Substitution& s,
                    const Signature& sig) {
    for (const Statement& st : statements) {
        if (!solvesStatement(st, s, sig)) return false;
    }
    return true;
}

namespace {

// Subset masks of {0..n-1} ordered by population count, then by value.
std::vector<std::uint32_t> subsetMasksBySize(std::size_t n) {
    std::vector<std::uint32_t> masks;
    masks.reserve(std::size_t(1) << n);
    for (std::uint32_t m = 0; m < (std::uint32_t(1) << n); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    return masks;
}

}  // namespace

void bruteForceLocalSolve(const FlatProblem& f, std::size_t maxSolutions,
                          const std::function<bool(const LocalSolution&)>& yield,
                          std::size_t capBits, const Deadline* deadline) {
    AtomUniverse uni = atomUniverse(f);
    std::size_t nVars = uni.vars.size();
    std::size_t nAtoms = uni.atNv.size();
    if (nVars * nAtoms > capBits) {
        throw SearchSpaceTooLarge("assignment space needs " +
                                  std::to_string(nVars * nAtoms) + " bits, cap is " +
                                  std::to_string(capBits));
    }
    if (maxSolutions == 0) return;

    std::vector<std::uint32_t> masks = subsetMasksBySize(nAtoms);
    std::vector<std::size_t> choice(nVars, 0);
    std::size_t found = 0;
    std::size_t tick = 0;

    for (;;) {
        if ((++tick & 0xfff) == 0) checkDeadline(deadline, "brute-force oracle");
        Assignment assign;
        for (std::size_t i = 0; i < nVars; ++i) {
            std::set<Atom> atoms;
            std::uint32_t m = masks[choice[i]];
            for (std::size_t b = 0; b < nAtoms; ++b) {
                if (m & (std::uint32_t(1) << b)) atoms.insert(uni.atNv[b]);
            }
            assign.sets[uni.vars[i]] = std::move(atoms);
        }
        if (isAcyclic(assign, f.sig)) {
            Substitution sigma = inducedSubstitution(assign, f.sig);
            if (verifySolution(f.statements, sigma, f.sig)) {
                ++found;
                if (!yield(LocalSolution{std::move(assign), std::move(sigma)})) return;
                if (found >= maxSolutions) return;
            }
        }
        // Odometer step; the final variable varies fastest.
        std::size_t i = nVars;
        while (i > 0) {
            --i;
            if (++choice[i] < masks.size()) break;
            choice[i] = 0;
            if (i == 0) return;
        }
        if (nVars == 0) return;  // single empty assignment
    }
}

bool bruteForceLocallySolvable(const FlatProblem& f, std::size_t capBits) {
    bool solvable = false;
    bruteForceLocalSolve(
        f, 1,
        [&](const LocalSolution&) {
            solvable = true;
            return false;
        },
        capBits);
    return solvable;
}

}  // namespace eldis
