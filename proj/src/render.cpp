#include "eldis/render.hpp"

#include <sstream>

namespace eldis {

namespace {

// The argument of 'some r.' must be a single factor: multi-atom arguments
// get parenthesized, single atoms and top do not.
std::string renderFactor(const ConceptTerm& t) {
    if (t.isTop()) return "top";
    if (t.isSingleAtom()) return renderAtom(t.atoms()[0]);
    return "(" + renderTerm(t) + ")";
}

std::string renderStatements(const std::vector<Statement>& statements,
                             const std::set<std::string>& vars) {
    std::ostringstream out;
    if (!vars.empty()) {
        out << "vars ";
        bool first = true;
        for (const std::string& v : vars) {
            if (!first) out << ", ";
            out << v;
            first = false;
        }
        out << ";\n";
    }
    for (const Statement& s : statements) out << renderStatement(s) << "\n";
    return out.str();
}

}  // namespace

std::string renderAtom(const Atom& a) {
    if (a.isName()) return a.name();
    return "some " + a.role() + "." + renderFactor(a.arg());
}

std::string renderTerm(const ConceptTerm& t) {
    if (t.isTop()) return "top";
    std::string out;
    for (std::size_t i = 0; i < t.atoms().size(); ++i) {
        if (i > 0) out += " & ";
        out += renderAtom(t.atoms()[i]);
    }
    return out;
}

std::string renderStatement(const Statement& s) {
    const char* op = s.kind == StatementKind::Sub ? " <= " : " !<= ";
    return renderTerm(s.lhs) + op + renderTerm(s.rhs) + ";";
}

std::string renderSubstitution(const Substitution& s) {
    std::string out;
    for (const auto& [var, term] : s.bindings()) {
        out += var + " := " + renderTerm(term) + ";\n";
    }
    return out;
}

std::string renderFlatProblem(const FlatProblem& f) {
    return renderStatements(f.statements, f.sig.variables);
}

std::string renderBasicProblem(const BasicProblem& b) {
    return renderStatements(b.statements, b.sig.variables);
}

}  // namespace eldis
