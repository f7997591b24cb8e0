// Propositional encoding of local disunification, model decoding, and
// all-solutions enumeration with blocking clauses.
//
// The variables are [C <= D] for all C, D in At, [X > Y] for all variables
// X, Y, and p_{C,X,D} for C in At, X in Var, D in At_nv, allocated in three
// contiguous ranges in that order. The clause classes:
//   I   translation of the problem (subsumptions with non-variable and
//       variable right-hand sides, dissubsumptions X !<= Y),
//   II  subsumption between non-variable atoms,
//   III transitivity over all atom triples,
//   IV  dissubsumptions C !<= X via the p variables,
//   V   irreflexivity and transitivity of > and its link to [X <= some r.Y].
// A satisfying valuation decodes to the assignment S_X = {D | [X <= D] true}
// which is always acyclic, and its induced substitution solves the problem;
// conversely every local solution induces a satisfying valuation, and
// enumerating models modulo the [X <= D] projection yields all local
// solutions modulo equivalence.

#pragma once

#include <functional>
#include <string>

#include "eldis/local.hpp"
#include "eldis/problem.hpp"
#include "eldis/sat_solver.hpp"

namespace eldis {

class SatVarMap {
public:
    SatVarMap() = default;
    explicit SatVarMap(const AtomUniverse& uni);

    const AtomUniverse& universe() const { return uni_; }

    int subVar(std::size_t atomC, std::size_t atomD) const;  // indices into at
    int gtVar(std::size_t varX, std::size_t varY) const;     // indices into vars
    int pVar(std::size_t atomC, std::size_t varX, std::size_t atomNvD) const;

    int totalVars() const;

    std::size_t atomIndex(const Atom& a) const;      // index into at
    std::size_t nvAtomIndex(const Atom& a) const;    // index into atNv
    std::size_t varIndex(const std::string& v) const;

private:
    AtomUniverse uni_;
};

// Builds the clause set. Every dissubsumption must have a single variable on
// each side (run variablizeDissubsumptions first); otherwise NotVariablized.
std::pair<CnfInstance, SatVarMap> buildClauses(const FlatProblem& f);

// Extracts (S, sigma_S) from a satisfying valuation. The decoded assignment
// is acyclic for every model of the clause set; a cycle raises
// InternalEncodingError.
LocalSolution decode(const std::vector<bool>& model, const SatVarMap& map,
                     const Signature& sig);

using SatBackend = std::function<SatResult(const CnfInstance&)>;

SatBackend builtinSatBackend(const Deadline* deadline = nullptr);
// Shells out: writes a DIMACS file, substitutes "{}" in the command template
// (or appends the path), and parses "s "/"v " lines from stdout. The exit
// status is ignored.
SatBackend externalSatBackend(std::string commandTemplate);

// Solve / block / repeat: after each model a clause negating the current
// [X <= D] projection is added, so distinct yields have distinct assignments
// and every local solution is equivalent to some yield.
void enumerateModels(const FlatProblem& f, std::size_t maxSolutions,
                     const std::function<bool(const LocalSolution&)>& yield,
                     const SatBackend& backend = nullptr);

// The valuation induced by a ground local solution: [C <= D] bits from the
// instantiated subsumptions, p bits from their definition, and [X > Y] from
// the reachability order (sigma(X) subsumed by some existential nesting of
// sigma(Y); role words are bounded by the role depth of the bindings, since
// deeper words cannot witness subsumption into a shallower ground term).
// Satisfies every clause of the instance. Throws NotASolution.
std::vector<bool> encodeSolutionAsValuation(const Substitution& s, const FlatProblem& f,
                                            const SatVarMap& map);

bool valuationSatisfies(const CnfInstance& cnf, const std::vector<bool>& valuation);

struct DimacsOutput {
    std::string cnfText;
    std::string varmapText;
};

DimacsOutput emitDimacs(const CnfInstance& cnf, const SatVarMap& map);

// Accepts "s SATISFIABLE" / "s UNSATISFIABLE" plus "v" literal lines.
// Unassigned variables default to false. Throws MalformedSolverOutput.
SatResult parseExternalModel(const std::string& text, const CnfInstance& cnf);

}  // namespace eldis
