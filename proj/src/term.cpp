#include "eldis/term.hpp"

#include <algorithm>

namespace eldis {

std::string Signature::freshVariable() {
    for (;;) {
        std::string name = "_v" + std::to_string(++freshCounter_);
        if (!isConceptName(name) && !isRole(name)) {
            variables.insert(name);
            return name;
        }
    }
}

Atom Atom::name(std::string n) {
    return Atom(Kind::Name, std::move(n), nullptr);
}

Atom Atom::exists(std::string role, ConceptTerm arg) {
    return Atom(Kind::Exists, std::move(role),
                std::make_shared<const ConceptTerm>(std::move(arg)));
}

const std::string& Atom::name() const {
    if (!isName()) throw InternalError("Atom::name on existential restriction");
    return symbol_;
}

const std::string& Atom::role() const {
    if (!isExists()) throw InternalError("Atom::role on concept name");
    return symbol_;
}

const ConceptTerm& Atom::arg() const {
    if (!isExists()) throw InternalError("Atom::arg on concept name");
    return *arg_;
}

bool Atom::isFlat() const {
    return isName() || arg_->isName();
}

int compareAtoms(const Atom& a, const Atom& b) {
    if (a.kind_ != b.kind_) return a.kind_ == Atom::Kind::Name ? -1 : 1;
    int c = a.symbol_.compare(b.symbol_);
    if (c != 0 || a.isName()) return c;
    return compareTerms(*a.arg_, *b.arg_);
}

ConceptTerm::ConceptTerm(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

ConceptTerm ConceptTerm::single(Atom a) {
    return ConceptTerm(std::vector<Atom>{std::move(a)});
}

int compareTerms(const ConceptTerm& a, const ConceptTerm& b) {
    std::size_t n = std::min(a.atoms_.size(), b.atoms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compareAtoms(a.atoms_[i], b.atoms_[i]);
        if (c != 0) return c;
    }
    if (a.atoms_.size() == b.atoms_.size()) return 0;
    return a.atoms_.size() < b.atoms_.size() ? -1 : 1;
}

ConceptTerm canonicalize(const ConceptTerm& term) {
    return ConceptTerm(term.atoms());
}

const ConceptTerm& Substitution::at(const std::string& var) const {
    auto it = bindings_.find(var);
    if (it == bindings_.end()) throw UnboundVariable("no binding for variable " + var);
    return it->second;
}

Substitution Substitution::restrictedTo(const std::set<std::string>& vars) const {
    Substitution out;
    for (const auto& [var, term] : bindings_) {
        if (vars.count(var) != 0) out.bind(var, term);
    }
    return out;
}

}  // namespace eldis
