#include "eldis/sat_solver.hpp"

#include <algorithm>
#include <cstdlib>

namespace eldis {

namespace {

// Literal encoding: variable v (0-based) gives 2v for the positive and 2v+1
// for the negative literal.
inline int posLit(int v) { return 2 * v; }
inline int negOf(int lit) { return lit ^ 1; }
inline int varOf(int lit) { return lit >> 1; }
inline bool signOf(int lit) { return lit & 1; }

class Cdcl {
public:
    Cdcl(int nVars, const Deadline* deadline) : nVars_(nVars), deadline_(deadline) {
        assign_.assign(nVars_, -1);
        level_.assign(nVars_, 0);
        reason_.assign(nVars_, -1);
        activity_.assign(nVars_, 0.0);
        phase_.assign(nVars_, 0);
        seen_.assign(nVars_, 0);
        watches_.assign(2 * static_cast<std::size_t>(nVars_), {});
    }

    // Returns false when the clause set is trivially unsatisfiable.
    bool addClause(const std::vector<int>& dimacsLits) {
        std::vector<int> lits;
        lits.reserve(dimacsLits.size());
        for (int dl : dimacsLits) {
            int v = std::abs(dl) - 1;
            lits.push_back(dl > 0 ? posLit(v) : posLit(v) + 1);
        }
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
            if (lits[i + 1] == negOf(lits[i])) return true;  // tautology
        }
        if (lits.empty()) return false;
        if (lits.size() == 1) {
            pendingUnits_.push_back(lits[0]);
            return true;
        }
        int idx = static_cast<int>(clauses_.size());
        clauses_.push_back(lits);
        watches_[lits[0]].push_back(idx);
        watches_[lits[1]].push_back(idx);
        return true;
    }

    SatResult solve() {
        for (int lit : pendingUnits_) {
            int val = valueLit(lit);
            if (val == 0) return {SatStatus::Unsat, {}};
            if (val == -1) enqueue(lit, -1);
        }
        std::uint64_t conflicts = 0;
        std::uint64_t restartLimit = lubyRestartLimit();
        for (;;) {
            int confl = propagate();
            if (confl != -1) {
                ++conflicts;
                if ((conflicts & 0x3ff) == 0) checkDeadline(deadline_, "sat solver");
                if (decisionLevel() == 0) return {SatStatus::Unsat, {}};
                std::vector<int> learnt;
                int btLevel = 0;
                analyze(confl, learnt, btLevel);
                cancelUntil(btLevel);
                record(learnt);
                decayActivity();
                if (conflicts >= restartLimit) {
                    conflicts = 0;
                    ++restarts_;
                    restartLimit = lubyRestartLimit();
                    cancelUntil(0);
                }
                continue;
            }
            int next = pickBranchVar();
            if (next == -1) return {SatStatus::Sat, extractModel()};
            trailLim_.push_back(static_cast<int>(trail_.size()));
            enqueue(phase_[next] ? posLit(next) : posLit(next) + 1, -1);
        }
    }

private:
    int valueLit(int lit) const {
        int v = assign_[varOf(lit)];
        if (v < 0) return -1;
        return v ^ static_cast<int>(signOf(lit));
    }

    int decisionLevel() const { return static_cast<int>(trailLim_.size()); }

    void enqueue(int lit, int reasonIdx) {
        int v = varOf(lit);
        assign_[v] = signOf(lit) ? 0 : 1;
        phase_[v] = assign_[v];
        level_[v] = decisionLevel();
        reason_[v] = reasonIdx;
        trail_.push_back(lit);
    }

    void cancelUntil(int targetLevel) {
        if (decisionLevel() <= targetLevel) return;
        int boundary = trailLim_[targetLevel];
        for (int i = static_cast<int>(trail_.size()) - 1; i >= boundary; --i) {
            assign_[varOf(trail_[i])] = -1;
        }
        trail_.resize(boundary);
        trailLim_.resize(targetLevel);
        qhead_ = std::min(qhead_, trail_.size());
    }

    int propagate() {
        while (qhead_ < trail_.size()) {
            int falseLit = negOf(trail_[qhead_++]);
            std::vector<int>& ws = watches_[falseLit];
            std::size_t i = 0, keep = 0;
            int conflict = -1;
            while (i < ws.size()) {
                int ci = ws[i++];
                std::vector<int>& c = clauses_[ci];
                if (c[0] == falseLit) std::swap(c[0], c[1]);
                if (valueLit(c[0]) == 1) {
                    ws[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (valueLit(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches_[c[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[keep++] = ci;
                if (valueLit(c[0]) == 0) {
                    conflict = ci;
                    while (i < ws.size()) ws[keep++] = ws[i++];
                    break;
                }
                enqueue(c[0], ci);
            }
            ws.resize(keep);
            if (conflict != -1) return conflict;
        }
        return -1;
    }

    void bump(int v) {
        activity_[v] += varInc_;
        if (activity_[v] > 1e100) {
            for (double& a : activity_) a *= 1e-100;
            varInc_ *= 1e-100;
        }
    }

    void decayActivity() { varInc_ /= 0.95; }

    void analyze(int confl, std::vector<int>& learnt, int& btLevel) {
        learnt.assign(1, 0);  // slot 0: the asserting literal
        int pathCount = 0;
        int p = -1;
        std::size_t idx = trail_.size();
        do {
            const std::vector<int>& c = clauses_[confl];
            for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
                int q = c[k];
                int v = varOf(q);
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                bump(v);
                if (level_[v] >= decisionLevel()) {
                    ++pathCount;
                } else {
                    learnt.push_back(q);
                }
            }
            while (!seen_[varOf(trail_[--idx])]) {}
            p = trail_[idx];
            confl = reason_[varOf(p)];
            seen_[varOf(p)] = 0;
            --pathCount;
        } while (pathCount > 0);
        learnt[0] = negOf(p);

        btLevel = 0;
        std::size_t maxAt = 1;
        for (std::size_t k = 1; k < learnt.size(); ++k) {
            int lv = level_[varOf(learnt[k])];
            if (lv > btLevel) {
                btLevel = lv;
                maxAt = k;
            }
        }
        if (learnt.size() > 1) std::swap(learnt[1], learnt[maxAt]);
        for (std::size_t k = 1; k < learnt.size(); ++k) seen_[varOf(learnt[k])] = 0;
    }

    void record(const std::vector<int>& learnt) {
        if (learnt.size() == 1) {
            cancelUntil(0);
            if (valueLit(learnt[0]) == -1) enqueue(learnt[0], -1);
            return;
        }
        int idx = static_cast<int>(clauses_.size());
        clauses_.push_back(learnt);
        watches_[learnt[0]].push_back(idx);
        watches_[learnt[1]].push_back(idx);
        enqueue(learnt[0], idx);
    }

    int pickBranchVar() {
        int best = -1;
        double bestAct = -1.0;
        for (int v = 0; v < nVars_; ++v) {
            if (assign_[v] == -1 && activity_[v] > bestAct) {
                best = v;
                bestAct = activity_[v];
            }
        }
        return best;
    }

    std::uint64_t lubyRestartLimit() {
        // Luby sequence 1,1,2,1,1,2,4,... scaled by 128 conflicts.
        std::uint64_t seq = restarts_ + 1;
        std::uint64_t k = 1;
        while ((k << 1) - 1 < seq) k <<= 1;
        while ((k << 1) - 1 != seq && k > 1) {
            seq -= k - 1;
            k = 1;
            while ((k << 1) - 1 < seq) k <<= 1;
        }
        return 128 * k;
    }

    std::vector<bool> extractModel() const {
        std::vector<bool> model(static_cast<std::size_t>(nVars_));
        for (int v = 0; v < nVars_; ++v) model[static_cast<std::size_t>(v)] = assign_[v] == 1;
        return model;
    }

    int nVars_;
    const Deadline* deadline_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int8_t> assign_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<double> activity_;
    std::vector<int8_t> phase_;
    std::vector<char> seen_;
    std::vector<int> trail_;
    std::vector<int> trailLim_;
    std::vector<int> pendingUnits_;
    std::size_t qhead_ = 0;
    std::uint64_t restarts_ = 0;
    double varInc_ = 1.0;
};

}  // namespace

SatResult satSolve(const CnfInstance& cnf, const Deadline* deadline) {
    Cdcl solver(cnf.numVars, deadline);
    for (const std::vector<int>& clause : cnf.clauses) {
        for (int lit : clause) {
            if (lit == 0 || std::abs(lit) > cnf.numVars) {
                throw InternalError("literal out of range in CNF instance");
            }
        }
        if (!solver.addClause(clause)) return {SatStatus::Unsat, {}};
    }
    return solver.solve();
}

}  // namespace eldis
