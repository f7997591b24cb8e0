#include "eldis/parser.hpp"

#include <cctype>
#include <utility>

#include "eldis/subsume.hpp"

namespace eldis {

namespace {

enum class Tok {
    Ident, KwTop, KwSome, KwVars, KwAnd, KwOr, KwNot,
    Amp, Dot, Semi, Comma, LParen, RParen,
    OpLeq, OpNotLeq, OpEq, OpNeq, OpAssign,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identCont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int tl = line, tc = col;
        if (identStart(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && identCont(text[j])) ++j;
            std::string word = text.substr(i, j - i);
            Tok kind = Tok::Ident;
            if (word == "top") kind = Tok::KwTop;
            else if (word == "some") kind = Tok::KwSome;
            else if (word == "vars") kind = Tok::KwVars;
            else if (word == "and") kind = Tok::KwAnd;
            else if (word == "or") kind = Tok::KwOr;
            else if (word == "not") kind = Tok::KwNot;
            out.push_back({kind, word, tl, tc});
            advance(j - i);
            continue;
        }
        if (c == '!' && i + 2 < text.size() && text[i + 1] == '<' && text[i + 2] == '=') {
            out.push_back({Tok::OpNotLeq, "!<=", tl, tc});
            advance(3);
        } else if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({Tok::OpNeq, "!=", tl, tc});
            advance(2);
        } else if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({Tok::OpLeq, "<=", tl, tc});
            advance(2);
        } else if (c == ':' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({Tok::OpAssign, ":=", tl, tc});
            advance(2);
        } else if (c == '=') {
            out.push_back({Tok::OpEq, "=", tl, tc});
            advance(1);
        } else if (c == '&') {
            out.push_back({Tok::Amp, "&", tl, tc});
            advance(1);
        } else if (c == '.') {
            out.push_back({Tok::Dot, ".", tl, tc});
            advance(1);
        } else if (c == ';') {
            out.push_back({Tok::Semi, ";", tl, tc});
            advance(1);
        } else if (c == ',') {
            out.push_back({Tok::Comma, ",", tl, tc});
            advance(1);
        } else if (c == '(') {
            out.push_back({Tok::LParen, "(", tl, tc});
            advance(1);
        } else if (c == ')') {
            out.push_back({Tok::RParen, ")", tl, tc});
            advance(1);
        } else {
            throw SyntaxError(tl, tc, "a token (got '" + std::string(1, c) + "')");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool hasReservedPrefix(const std::string& name) {
    return name.size() >= 2 && name[0] == '_' && name[1] == 'v';
}

class Parser {
public:
    // Problem mode: builds the signature as it goes.
    explicit Parser(const std::string& text) : toks_(lex(text)), buildSig_(true) {}
    // Fixed-signature mode: names must already be declared.
    Parser(const std::string& text, const Signature& sig)
        : toks_(lex(text)), buildSig_(false) {
        sig_ = sig;
    }

    GeneralProblem problem() {
        if (peek().kind == Tok::KwVars) varsHeader();
        std::vector<Formula> parts;
        while (peek().kind != Tok::End) {
            parts.push_back(formula());
            expect(Tok::Semi, "';'");
        }
        GeneralProblem g;
        g.sig = sig_;
        g.formula = parts.size() == 1 ? std::move(parts[0])
                                      : Formula::conjunction(std::move(parts));
        return g;
    }

    ConceptTerm singleTerm() {
        ConceptTerm t = term();
        expect(Tok::End, "end of input");
        return t;
    }

    Substitution substitution() {
        Substitution s;
        while (peek().kind != Tok::End) {
            Token name = expect(Tok::Ident, "variable name");
            if (!sig_.isVariable(name.text)) {
                throw UnknownVariable("unknown variable in substitution: " + name.text);
            }
            if (s.bound(name.text)) {
                throw SyntaxError(name.line, name.col,
                                  "a single binding per variable (duplicate " + name.text + ")");
            }
            expect(Tok::OpAssign, "':='");
            ConceptTerm t = term();
            expect(Tok::Semi, "';'");
            if (!isGround(t, sig_)) {
                throw NonGroundBinding("binding for " + name.text + " contains a variable");
            }
            s.bind(name.text, std::move(t));
        }
        return s;
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    Token expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) throw SyntaxError(peek().line, peek().col, what);
        return toks_[pos_++];
    }

    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    void varsHeader() {
        expect(Tok::KwVars, "'vars'");
        for (;;) {
            Token name = expect(Tok::Ident, "variable name");
            checkReserved(name);
            if (sig_.isVariable(name.text)) {
                throw DuplicateVarDecl("variable declared twice: " + name.text);
            }
            sig_.variables.insert(name.text);
            if (!accept(Tok::Comma)) break;
        }
        expect(Tok::Semi, "';'");
    }

    void checkReserved(const Token& t) {
        if (hasReservedPrefix(t.text)) {
            throw SyntaxError(t.line, t.col,
                              "an identifier without the reserved prefix '_v'");
        }
    }

    std::string conceptName(const Token& t) {
        checkReserved(t);
        if (buildSig_) {
            if (sig_.isRole(t.text)) {
                throw RoleUsedAsConcept(t.text + " is used both as a role and as a concept name");
            }
            if (!sig_.isVariable(t.text)) sig_.constants.insert(t.text);
        } else if (!sig_.isConceptName(t.text)) {
            throw SyntaxError(t.line, t.col, "a declared concept name (got " + t.text + ")");
        }
        return t.text;
    }

    std::string roleName(const Token& t) {
        checkReserved(t);
        if (buildSig_) {
            if (sig_.isConceptName(t.text)) {
                throw RoleUsedAsConcept(t.text + " is used both as a role and as a concept name");
            }
            sig_.roles.insert(t.text);
        } else if (!sig_.isRole(t.text)) {
            throw SyntaxError(t.line, t.col, "a declared role name (got " + t.text + ")");
        }
        return t.text;
    }

    ConceptTerm factor() {
        if (accept(Tok::KwTop)) return ConceptTerm::top();
        if (peek().kind == Tok::Ident) {
            Token t = toks_[pos_++];
            return ConceptTerm::single(Atom::name(conceptName(t)));
        }
        if (accept(Tok::KwSome)) {
            Token r = expect(Tok::Ident, "role name");
            expect(Tok::Dot, "'.'");
            ConceptTerm arg = factor();
            return ConceptTerm::single(Atom::exists(roleName(r), std::move(arg)));
        }
        if (accept(Tok::LParen)) {
            ConceptTerm t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        throw SyntaxError(peek().line, peek().col, "a concept term");
    }

    ConceptTerm term() {
        std::vector<Atom> atoms;
        for (;;) {
            ConceptTerm f = factor();
            atoms.insert(atoms.end(), f.atoms().begin(), f.atoms().end());
            if (!accept(Tok::Amp)) break;
        }
        return ConceptTerm(std::move(atoms));
    }

    Formula constraint() {
        ConceptTerm lhs = term();
        Tok op = peek().kind;
        if (op != Tok::OpLeq && op != Tok::OpNotLeq && op != Tok::OpEq && op != Tok::OpNeq) {
            throw SyntaxError(peek().line, peek().col, "'<=', '!<=', '=' or '!='");
        }
        ++pos_;
        ConceptTerm rhs = term();
        Formula fwd = Formula::leafOf(Statement::sub(lhs, rhs));
        Formula bwd = Formula::leafOf(Statement::sub(rhs, lhs));
        switch (op) {
            case Tok::OpLeq:
                return fwd;
            case Tok::OpNotLeq:
                return Formula::negation(std::move(fwd));
            case Tok::OpEq:
                return Formula::conjunction({std::move(fwd), std::move(bwd)});
            default:
                return Formula::disjunction({Formula::negation(std::move(fwd)),
                                             Formula::negation(std::move(bwd))});
        }
    }

    // A '(' can open either a subformula or a parenthesized term; try the
    // formula reading first and fall back, keeping the error that got
    // further through the input.
    Formula formulaPrimary() {
        if (accept(Tok::KwNot)) return Formula::negation(formulaPrimary());
        if (peek().kind == Tok::LParen) {
            std::size_t save = pos_;
            Signature sigSave = sig_;
            try {
                ++pos_;
                Formula f = formula();
                expect(Tok::RParen, "')'");
                return f;
            } catch (const SyntaxError& asFormula) {
                std::size_t reachedFormula = pos_;
                pos_ = save;
                sig_ = sigSave;
                try {
                    return constraint();
                } catch (const SyntaxError& asConstraint) {
                    if (reachedFormula > pos_) throw asFormula;
                    throw;
                }
            }
        }
        return constraint();
    }

    Formula formulaConjunct() {
        Formula f = formulaPrimary();
        if (peek().kind != Tok::KwAnd) return f;
        std::vector<Formula> parts;
        parts.push_back(std::move(f));
        while (accept(Tok::KwAnd)) parts.push_back(formulaPrimary());
        return Formula::conjunction(std::move(parts));
    }

    Formula formula() {
        Formula f = formulaConjunct();
        if (peek().kind != Tok::KwOr) return f;
        std::vector<Formula> parts;
        parts.push_back(std::move(f));
        while (accept(Tok::KwOr)) parts.push_back(formulaConjunct());
        return Formula::disjunction(std::move(parts));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Signature sig_;
    bool buildSig_;
};

}  // namespace

GeneralProblem parseProblem(const std::string& text) {
    return Parser(text).problem();
}

ConceptTerm parseTerm(const std::string& text, const Signature& sig) {
    return Parser(text, sig).singleTerm();
}

Substitution parseSubstitution(const std::string& text, const Signature& sig) {
    return Parser(text, sig).substitution();
}

}  // namespace eldis
