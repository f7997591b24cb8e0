// Structural subsumption and dissubsumption checks, substitution application,
// and the size/depth measures used by the solvers.
//
// Subsumption between canonical terms is decided by the recursive
// characterization: C is subsumed by D iff every top-level atom of D is
// subsumed by some top-level atom of C, where atoms compare by name equality
// or by decomposing existential restrictions over the same role.  Variables
// are treated as uninterpreted constants, so on ground inputs this is exactly
// subsumption between EL concept terms.

#pragma once

#include "eldis/term.hpp"

namespace eldis {

bool atomSubsumes(const Atom& c, const Atom& d);
bool subsumes(const ConceptTerm& c, const ConceptTerm& d);
bool dissubsumes(const ConceptTerm& c, const ConceptTerm& d);

bool isGround(const Atom& a, const Signature& sig);
bool isGround(const ConceptTerm& t, const Signature& sig);
bool isGround(const Statement& s, const Signature& sig);

// Homomorphic application of a ground substitution. Every variable occurring
// in the term must be bound; otherwise UnboundVariable is thrown.
ConceptTerm applySubstitution(const Substitution& s, const ConceptTerm& t, const Signature& sig);
// Applying to an atom can yield a multi-atom term (when the atom is a bound
// variable), hence the ConceptTerm result.
ConceptTerm applySubstitution(const Substitution& s, const Atom& a, const Signature& sig);

// True iff both substitutions have the same domain and bind every variable to
// equivalent terms (mutual subsumption). Throws DomainMismatch.
bool substitutionsEquivalent(const Substitution& a, const Substitution& b);

// Extends s so that every variable in vars is bound, defaulting to top.
// Variables can disappear from a problem during normalization or reduction;
// a solution of the reduced problem then constrains them in no way.
Substitution totalOn(const Substitution& s, const std::set<std::string>& vars);

// Number of symbols in a term: one per concept name, one per existential
// restriction, one per conjunction separator; top counts as one, so the size
// is always at least 1.
std::size_t termSize(const ConceptTerm& t);
std::size_t atomSize(const Atom& a);

// Measure of a statement: |lhs| * |rhs|.
std::size_t statementMeasure(const Statement& s);

// Maximum nesting depth of existential restrictions.
std::size_t roleDepth(const ConceptTerm& t);
std::size_t roleDepth(const Atom& a);

}  // namespace eldis
