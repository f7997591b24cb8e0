// Text grammar for problems, terms and substitutions.
//
//   identifiers   [A-Za-z_][A-Za-z0-9_']*   ("_v..." is reserved)
//   term          factor ('&' factor)*
//   factor        'top' | ident | 'some' ident '.' factor | '(' term ')'
//   constraint    term ('<=' | '!<=' | '=' | '!=') term
//   formula       'and' / 'or' / 'not' over constraints, with parentheses;
//                 precedence not > and > or
//   problem       optional header 'vars X, Y;' followed by formulas, each
//                 terminated by ';'.  '#' starts a line comment.
//   substitution  lines 'X := term;'
//
// Equations expand to the conjunction of both subsumptions, disequations to
// the disjunction of both dissubsumptions, and 'C !<= D' to not(C <= D).
// Every concept name that is not declared as a variable is a constant.

#pragma once

#include <string>

#include "eldis/problem.hpp"

namespace eldis {

GeneralProblem parseProblem(const std::string& text);

// Parses a single concept term against an existing signature. All names must
// be declared in the signature.
ConceptTerm parseTerm(const std::string& text, const Signature& sig);

// Parses "X := term;" lines; every binding must be ground over sig.
Substitution parseSubstitution(const std::string& text, const Signature& sig);

}  // namespace eldis
