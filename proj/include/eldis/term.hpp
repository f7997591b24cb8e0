// Concept terms in canonical form, signatures, substitutions and statements.
//
// A concept term is a conjunction of atoms; the empty conjunction is top.
// Atoms are concept names or existential restrictions over a role.  Terms are
// canonical by construction: atoms are kept sorted under a fixed total order,
// duplicates are removed, and existential arguments are canonical recursively.
// Syntactic equality of canonical forms is plain structural comparison.

#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "eldis/errors.hpp"

namespace eldis {

// The finite signature: concept constants, concept variables, role names.
// Constants and variables partition the concept names; roles are disjoint
// from both. Fresh variables created by the toolkit use the reserved
// prefix "_v" which user input may not contain.
struct Signature {
    std::set<std::string> constants;
    std::set<std::string> variables;
    std::set<std::string> roles;

    bool isConstant(const std::string& n) const { return constants.count(n) != 0; }
    bool isVariable(const std::string& n) const { return variables.count(n) != 0; }
    bool isRole(const std::string& n) const { return roles.count(n) != 0; }
    bool isConceptName(const std::string& n) const { return isConstant(n) || isVariable(n); }

    // Registers and returns the next unused "_v<k>" variable.
    std::string freshVariable();

private:
    unsigned freshCounter_ = 0;
};

class ConceptTerm;

// A concept name or an existential restriction. Value type; existential
// arguments are immutably shared, so copies are cheap.
class Atom {
public:
    enum class Kind { Name, Exists };

    static Atom name(std::string n);
    static Atom exists(std::string role, ConceptTerm arg);

    Kind kind() const { return kind_; }
    bool isName() const { return kind_ == Kind::Name; }
    bool isExists() const { return kind_ == Kind::Exists; }

    const std::string& name() const;  // Kind::Name only
    const std::string& role() const;  // Kind::Exists only
    const ConceptTerm& arg() const;   // Kind::Exists only

    // A flat atom is a name, or an existential restriction whose argument is
    // a single concept name.
    bool isFlat() const;

    bool operator==(const Atom& other) const { return compareAtoms(*this, other) == 0; }
    bool operator!=(const Atom& other) const { return !(*this == other); }
    bool operator<(const Atom& other) const { return compareAtoms(*this, other) < 0; }

    // Total order: names before existentials; names by string; existentials
    // by role, then recursively by argument.
    friend int compareAtoms(const Atom& a, const Atom& b);

private:
    Atom(Kind k, std::string symbol, std::shared_ptr<const ConceptTerm> arg)
        : kind_(k), symbol_(std::move(symbol)), arg_(std::move(arg)) {}

    Kind kind_;
    std::string symbol_;
    std::shared_ptr<const ConceptTerm> arg_;
};

// Canonical conjunction of atoms; the empty sequence denotes top.
// The constructor canonicalizes: it sorts, removes syntactic duplicates, and
// relies on the arguments of existentials being canonical themselves. This
// realizes associativity, commutativity and idempotence of conjunction and
// makes canonicalization idempotent.
class ConceptTerm {
public:
    ConceptTerm() = default;  // top
    explicit ConceptTerm(std::vector<Atom> atoms);

    static ConceptTerm top() { return ConceptTerm(); }
    static ConceptTerm single(Atom a);

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool isTop() const { return atoms_.empty(); }
    bool isSingleAtom() const { return atoms_.size() == 1; }
    // True iff the term is exactly one name atom.
    bool isName() const { return isSingleAtom() && atoms_[0].isName(); }

    bool operator==(const ConceptTerm& other) const { return compareTerms(*this, other) == 0; }
    bool operator!=(const ConceptTerm& other) const { return !(*this == other); }
    bool operator<(const ConceptTerm& other) const { return compareTerms(*this, other) < 0; }

    friend int compareTerms(const ConceptTerm& a, const ConceptTerm& b);

private:
    std::vector<Atom> atoms_;
};

// Re-canonicalizes a term. Terms are canonical by construction, so this is
// the identity; it exists so tests can state idempotence directly.
ConceptTerm canonicalize(const ConceptTerm& term);

enum class StatementKind { Sub, Dissub };

// A subsumption (lhs <=? rhs) or dissubsumption (lhs !<=? rhs) constraint.
struct Statement {
    ConceptTerm lhs;
    ConceptTerm rhs;
    StatementKind kind = StatementKind::Sub;

    static Statement sub(ConceptTerm l, ConceptTerm r) {
        return Statement{std::move(l), std::move(r), StatementKind::Sub};
    }
    static Statement dissub(ConceptTerm l, ConceptTerm r) {
        return Statement{std::move(l), std::move(r), StatementKind::Dissub};
    }

    bool operator==(const Statement& o) const {
        return kind == o.kind && lhs == o.lhs && rhs == o.rhs;
    }
    bool operator<(const Statement& o) const {
        if (kind != o.kind) return kind < o.kind;
        int c = compareTerms(lhs, o.lhs);
        if (c != 0) return c < 0;
        return compareTerms(rhs, o.rhs) < 0;
    }
};

// Maps variables to ground concept terms.
class Substitution {
public:
    Substitution() = default;

    void bind(const std::string& var, ConceptTerm term) { bindings_[var] = std::move(term); }
    bool bound(const std::string& var) const { return bindings_.count(var) != 0; }

    // Throws UnboundVariable if var has no binding.
    const ConceptTerm& at(const std::string& var) const;

    const std::map<std::string, ConceptTerm>& bindings() const { return bindings_; }
    bool empty() const { return bindings_.empty(); }

    // Keeps only the bindings for the given variables.
    Substitution restrictedTo(const std::set<std::string>& vars) const;

private:
    std::map<std::string, ConceptTerm> bindings_;
};

}  // namespace eldis
