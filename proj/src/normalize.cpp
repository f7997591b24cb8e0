#include "eldis/normalize.hpp"

#include <deque>

#include "eldis/subsume.hpp"

namespace eldis {

namespace {

void abstractFormula(const Formula& f, std::vector<Statement>& literals,
                     std::map<Statement, std::size_t>& index, BoolSkeleton& out) {
    switch (f.kind) {
        case Formula::Kind::Leaf: {
            out.kind = BoolSkeleton::Kind::Lit;
            auto it = index.find(*f.leaf);
            if (it == index.end()) {
                it = index.emplace(*f.leaf, literals.size()).first;
                literals.push_back(*f.leaf);
            }
            out.lit = it->second;
            return;
        }
        case Formula::Kind::Not:
            out.kind = BoolSkeleton::Kind::Not;
            break;
        case Formula::Kind::And:
            out.kind = BoolSkeleton::Kind::And;
            break;
        case Formula::Kind::Or:
            out.kind = BoolSkeleton::Kind::Or;
            break;
    }
    out.children.resize(f.children.size());
    for (std::size_t i = 0; i < f.children.size(); ++i) {
        abstractFormula(f.children[i], literals, index, out.children[i]);
    }
}

enum class Three { False, True, Unknown };

Three evalSkeleton(const BoolSkeleton& sk, const std::vector<int>& val) {
    switch (sk.kind) {
        case BoolSkeleton::Kind::Lit:
            if (val[sk.lit] < 0) return Three::Unknown;
            return val[sk.lit] ? Three::True : Three::False;
        case BoolSkeleton::Kind::Not: {
            Three c = evalSkeleton(sk.children[0], val);
            if (c == Three::Unknown) return Three::Unknown;
            return c == Three::True ? Three::False : Three::True;
        }
        case BoolSkeleton::Kind::And: {
            bool unknown = false;
            for (const BoolSkeleton& c : sk.children) {
                Three r = evalSkeleton(c, val);
                if (r == Three::False) return Three::False;
                if (r == Three::Unknown) unknown = true;
            }
            return unknown ? Three::Unknown : Three::True;
        }
        case BoolSkeleton::Kind::Or: {
            bool unknown = false;
            for (const BoolSkeleton& c : sk.children) {
                Three r = evalSkeleton(c, val);
                if (r == Three::True) return Three::True;
                if (r == Three::Unknown) unknown = true;
            }
            return unknown ? Three::Unknown : Three::False;
        }
    }
    return Three::Unknown;
}

bool enumerateValuations(const PropAbstraction& abs, std::vector<int>& val, std::size_t next,
                         const GeneralProblem& g,
                         const std::function<bool(const BasicProblem&)>& yield) {
    Three r = evalSkeleton(abs.skeleton, val);
    if (r == Three::False) return true;  // prune
    if (next == val.size()) {
        BasicProblem b;
        b.sig = g.sig;
        for (std::size_t i = 0; i < abs.literals.size(); ++i) {
            Statement st = abs.literals[i];
            if (!val[i]) st.kind = StatementKind::Dissub;
            insertStatement(b.statements, st);
        }
        return yield(b);
    }
    // Lexicographic order over the literal sequence, false before true.
    for (int bit = 0; bit <= 1; ++bit) {
        val[next] = bit;
        if (!enumerateValuations(abs, val, next + 1, g, yield)) {
            val[next] = -1;
            return false;
        }
    }
    val[next] = -1;
    return true;
}

}  // namespace

PropAbstraction propositionalAbstraction(const GeneralProblem& g) {
    PropAbstraction abs;
    std::map<Statement, std::size_t> index;
    abstractFormula(g.formula, abs.literals, index, abs.skeleton);
    return abs;
}

void enumerateBasicProblems(const GeneralProblem& g,
                            const std::function<bool(const BasicProblem&)>& yield) {
    PropAbstraction abs = propositionalAbstraction(g);
    std::vector<int> val(abs.literals.size(), -1);
    enumerateValuations(abs, val, 0, g, yield);
}

Atom TermFlattener::flattenAtom(const Atom& a) {
    if (a.isName() || a.arg().isName()) return a;
    std::string v = abbreviate(a.arg());
    return Atom::exists(a.role(), ConceptTerm::single(Atom::name(v)));
}

ConceptTerm TermFlattener::flattenSide(const ConceptTerm& t) {
    std::vector<Atom> atoms;
    for (const Atom& a : t.atoms()) atoms.push_back(flattenAtom(a));
    return ConceptTerm(std::move(atoms));
}

void TermFlattener::processStatement(const Statement& s) {
    ConceptTerm lhs = flattenSide(s.lhs);
    ConceptTerm rhs = flattenSide(s.rhs);
    if (s.kind == StatementKind::Sub) {
        for (const Atom& d : rhs.atoms()) {
            insertStatement(out_.statements, Statement::sub(lhs, ConceptTerm::single(d)));
        }
        // A top right-hand side yields no statements: the empty conjunction
        // of subsumptions is trivially true.
    } else {
        insertStatement(out_.statements, Statement::dissub(lhs, rhs));
    }
}

void TermFlattener::drainQueue() {
    while (!queue_.empty()) {
        Statement s = queue_.front();
        queue_.pop_front();
        processStatement(s);
    }
}

std::string TermFlattener::abbreviate(const ConceptTerm& subterm) {
    auto it = cache_.find(subterm);
    if (it != cache_.end()) return it->second;
    std::string v = out_.sig.freshVariable();
    cache_.emplace(subterm, v);
    out_.freshVars.emplace(v, subterm);
    ConceptTerm vTerm = ConceptTerm::single(Atom::name(v));
    queue_.push_back(Statement::sub(vTerm, subterm));
    queue_.push_back(Statement::sub(subterm, vTerm));
    return v;
}

FlatProblem flatten(const BasicProblem& b) {
    FlatProblem out;
    out.sig = b.sig;
    out.origin = std::make_shared<BasicProblem>(b);
    TermFlattener fl(out);
    for (const Statement& s : b.statements) {
        fl.processStatement(s);
        fl.drainQueue();
    }
    return out;
}

FlatProblem variablizeDissubsumptions(const FlatProblem& f) {
    FlatProblem out;
    out.sig = f.sig;
    out.freshVars = f.freshVars;
    out.origin = f.origin;

    std::map<ConceptTerm, std::string> cache;
    auto toVariable = [&](const ConceptTerm& side) -> ConceptTerm {
        if (side.isName() && out.sig.isVariable(side.atoms()[0].name())) return side;
        auto it = cache.find(side);
        if (it != cache.end()) return ConceptTerm::single(Atom::name(it->second));
        std::string v = out.sig.freshVariable();
        cache.emplace(side, v);
        out.freshVars.emplace(v, side);
        ConceptTerm vTerm = ConceptTerm::single(Atom::name(v));
        // Both directions of v =? side, kept flat: the upper bounds split
        // over the side's atoms, the lower bound is a single subsumption.
        // For a top side only the lower bound with an empty left-hand side
        // remains; v <= top is trivially true and omitted.
        for (const Atom& d : side.atoms()) {
            insertStatement(out.statements, Statement::sub(vTerm, ConceptTerm::single(d)));
        }
        insertStatement(out.statements, Statement::sub(side, vTerm));
        return vTerm;
    };

    for (const Statement& s : f.statements) {
        if (s.kind == StatementKind::Sub) {
            insertStatement(out.statements, s);
        } else {
            ConceptTerm l = toVariable(s.lhs);
            ConceptTerm r = toVariable(s.rhs);
            insertStatement(out.statements, Statement::dissub(std::move(l), std::move(r)));
        }
    }
    return out;
}

}  // namespace eldis
