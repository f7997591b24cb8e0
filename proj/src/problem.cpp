#include "eldis/problem.hpp"

#include <algorithm>

namespace eldis {

Formula Formula::leafOf(Statement sub) {
    if (sub.kind != StatementKind::Sub) {
        throw InternalError("formula leaves must be subsumptions");
    }
    Formula f;
    f.kind = Kind::Leaf;
    f.leaf = std::move(sub);
    return f;
}

Formula Formula::negation(Formula inner) {
    Formula f;
    f.kind = Kind::Not;
    f.children.push_back(std::move(inner));
    return f;
}

Formula Formula::conjunction(std::vector<Formula> fs) {
    Formula f;
    f.kind = Kind::And;
    f.children = std::move(fs);
    return f;
}

Formula Formula::disjunction(std::vector<Formula> fs) {
    Formula f;
    f.kind = Kind::Or;
    f.children = std::move(fs);
    return f;
}

bool insertStatement(std::vector<Statement>& set, const Statement& s) {
    auto it = std::lower_bound(set.begin(), set.end(), s);
    if (it != set.end() && *it == s) return false;
    set.insert(it, s);
    return true;
}

bool isFlatStatement(const Statement& s) {
    for (const Atom& a : s.lhs.atoms()) {
        if (!a.isFlat()) return false;
    }
    for (const Atom& a : s.rhs.atoms()) {
        if (!a.isFlat()) return false;
    }
    if (s.kind == StatementKind::Sub) return s.rhs.isSingleAtom();
    return true;
}

bool isFlatProblem(const FlatProblem& f) {
    return std::all_of(f.statements.begin(), f.statements.end(), isFlatStatement);
}

}  // namespace eldis
