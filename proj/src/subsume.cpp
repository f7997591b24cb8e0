#include "eldis/subsume.hpp"

#include <algorithm>

namespace eldis {

bool atomSubsumes(const Atom& c, const Atom& d) {
    if (c.isName() || d.isName()) {
        return c.isName() && d.isName() && c.name() == d.name();
    }
    return c.role() == d.role() && subsumes(c.arg(), d.arg());
}

bool subsumes(const ConceptTerm& c, const ConceptTerm& d) {
    for (const Atom& da : d.atoms()) {
        bool covered = false;
        for (const Atom& ca : c.atoms()) {
            if (atomSubsumes(ca, da)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

bool dissubsumes(const ConceptTerm& c, const ConceptTerm& d) {
    return !subsumes(c, d);
}

bool isGround(const Atom& a, const Signature& sig) {
    if (a.isName()) return !sig.isVariable(a.name());
    return isGround(a.arg(), sig);
}

bool isGround(const ConceptTerm& t, const Signature& sig) {
    for (const Atom& a : t.atoms()) {
        if (!isGround(a, sig)) return false;
    }
    return true;
}

bool isGround(const Statement& s, const Signature& sig) {
    return isGround(s.lhs, sig) && isGround(s.rhs, sig);
}

ConceptTerm applySubstitution(const Substitution& s, const Atom& a, const Signature& sig) {
    if (a.isName()) {
        if (sig.isVariable(a.name())) return s.at(a.name());
        return ConceptTerm::single(a);
    }
    return ConceptTerm::single(Atom::exists(a.role(), applySubstitution(s, a.arg(), sig)));
}

ConceptTerm applySubstitution(const Substitution& s, const ConceptTerm& t, const Signature& sig) {
    std::vector<Atom> atoms;
    for (const Atom& a : t.atoms()) {
        ConceptTerm piece = applySubstitution(s, a, sig);
        atoms.insert(atoms.end(), piece.atoms().begin(), piece.atoms().end());
    }
    return ConceptTerm(std::move(atoms));
}

bool substitutionsEquivalent(const Substitution& a, const Substitution& b) {
    if (a.bindings().size() != b.bindings().size()) {
        throw DomainMismatch("substitutions have different domains");
    }
    for (const auto& [var, termA] : a.bindings()) {
        if (!b.bound(var)) throw DomainMismatch("substitutions have different domains: " + var);
        const ConceptTerm& termB = b.at(var);
        if (!subsumes(termA, termB) || !subsumes(termB, termA)) return false;
    }
    return true;
}

Substitution totalOn(const Substitution& s, const std::set<std::string>& vars) {
    Substitution out = s;
    for (const std::string& v : vars) {
        if (!out.bound(v)) out.bind(v, ConceptTerm::top());
    }
    return out;
}

std::size_t atomSize(const Atom& a) {
    if (a.isName()) return 1;
    return 1 + termSize(a.arg());
}

std::size_t termSize(const ConceptTerm& t) {
    if (t.isTop()) return 1;
    std::size_t total = t.atoms().size() - 1;  // conjunction separators
    for (const Atom& a : t.atoms()) total += atomSize(a);
    return total;
}

std::size_t statementMeasure(const Statement& s) {
    return termSize(s.lhs) * termSize(s.rhs);
}

std::size_t roleDepth(const Atom& a) {
    if (a.isName()) return 0;
    return 1 + roleDepth(a.arg());
}

std::size_t roleDepth(const ConceptTerm& t) {
    std::size_t depth = 0;
    for (const Atom& a : t.atoms()) depth = std::max(depth, roleDepth(a));
    return depth;
}

}  // namespace eldis
