// Rendering back to the problem grammar. Output is bit-exact: single spaces,
// '&' separators, atoms in canonical order, so parsing a rendered canonical
// term gives back the same term.

#pragma once

#include <string>

#include "eldis/problem.hpp"

namespace eldis {

std::string renderAtom(const Atom& a);
std::string renderTerm(const ConceptTerm& t);
std::string renderStatement(const Statement& s);  // includes the trailing ';'
std::string renderSubstitution(const Substitution& s);
// "vars ...;" header (when the problem has variables) followed by one
// statement per line in canonical order.
std::string renderFlatProblem(const FlatProblem& f);
std::string renderBasicProblem(const BasicProblem& b);

}  // namespace eldis
