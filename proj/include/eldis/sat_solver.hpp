// A small complete SAT solver: unit propagation over watched literals,
// first-UIP conflict analysis with clause learning, activity-based decisions
// with phase saving, and Luby restarts. Deterministic: the same instance
// always produces the same model.

#pragma once

#include <vector>

#include "eldis/deadline.hpp"

namespace eldis {

// DIMACS-style instance: variables are 1..numVars, a negative literal is the
// negation of the variable. Clauses may contain duplicate or complementary
// literals; the solver normalizes at load time.
struct CnfInstance {
    int numVars = 0;
    std::vector<std::vector<int>> clauses;

    void addClause(std::vector<int> lits) { clauses.push_back(std::move(lits)); }
};

enum class SatStatus { Sat, Unsat };

struct SatResult {
    SatStatus status = SatStatus::Unsat;
    std::vector<bool> model;  // index v-1 holds the value of variable v

    bool sat() const { return status == SatStatus::Sat; }
};

SatResult satSolve(const CnfInstance& cnf, const Deadline* deadline = nullptr);

}  // namespace eldis
