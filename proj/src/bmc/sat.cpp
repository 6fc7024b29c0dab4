#include "j2aig/sat.hpp"

#include <algorithm>
#include <sstream>

#include "j2aig/errors.hpp"

namespace j2aig::sat {

namespace {

double luby(double y, int x) {
    int size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x %= size;
    }
    double r = 1;
    for (int k = 0; k < seq; ++k) r *= y;
    return r;
}

} // namespace

int Solver::new_var() {
    int v = num_vars();
    assign_.push_back(kUndef);
    phase_.push_back(0);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    activity_.push_back(0);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_pos_.push_back(-1);
    heap_insert(v);
    return v;
}

bool Solver::add_clause(std::vector<SLit> lits) {
    if (!ok_) return false;
    for (SLit l : lits)
        if (var_of(l) >= num_vars()) throw Error("clause refers to an unknown variable");
    std::sort(lits.begin(), lits.end());
    std::vector<SLit> out;
    for (size_t i = 0; i < lits.size(); ++i) {
        SLit l = lits[i];
        if (i > 0 && l == lits[i - 1]) continue;
        if (i > 0 && l == lnot(lits[i - 1])) return true;
        int8_t v = value(l);
        if (v == 1) return true;
        if (v == 0) continue;
        out.push_back(l);
    }
    if (out.empty()) return ok_ = false;
    if (out.size() == 1) {
        enqueue(out[0], kNoReason);
        if (propagate() != kNoReason) ok_ = false;
        return ok_;
    }
    clauses_.push_back(Clause{std::move(out), false, false, 0});
    ++num_original_;
    attach(static_cast<uint32_t>(clauses_.size() - 1));
    return true;
}

void Solver::attach(uint32_t cref) {
    const Clause& c = clauses_[cref];
    watches_[c.lits[0]].push_back({cref, c.lits[1]});
    watches_[c.lits[1]].push_back({cref, c.lits[0]});
}

void Solver::enqueue(SLit l, uint32_t reason) {
    auto v = static_cast<size_t>(var_of(l));
    assign_[v] = is_neg(l) ? 0 : 1;
    level_[v] = level();
    reason_[v] = reason;
    trail_.push_back(l);
}

uint32_t Solver::propagate() {
    uint32_t confl = kNoReason;
    while (qhead_ < trail_.size()) {
        SLit p = trail_[qhead_++];
        SLit false_lit = lnot(p);
        auto& ws = watches_[false_lit];
        size_t i = 0;
        size_t j = 0;
        while (i < ws.size()) {
            Watcher w = ws[i++];
            if (value(w.blocker) == 1) {
                ws[j++] = w;
                continue;
            }
            Clause& c = clauses_[w.cref];
            if (c.deleted) continue;
            if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
            SLit first = c.lits[0];
            if (first != w.blocker && value(first) == 1) {
                ws[j++] = {w.cref, first};
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < c.lits.size(); ++k)
                if (value(c.lits[k]) != 0) {
                    std::swap(c.lits[1], c.lits[k]);
                    watches_[c.lits[1]].push_back({w.cref, first});
                    moved = true;
                    break;
                }
            if (moved) continue;
            ws[j++] = {w.cref, first};
            if (value(first) == 0) {
                confl = w.cref;
                qhead_ = trail_.size();
                while (i < ws.size()) ws[j++] = ws[i++];
            } else {
                enqueue(first, w.cref);
            }
        }
        ws.resize(j);
    }
    return confl;
}

bool Solver::redundant(SLit l) const {
    uint32_t r = reason_[static_cast<size_t>(var_of(l))];
    if (r == kNoReason) return false;
    for (SLit q : clauses_[r].lits) {
        auto v = static_cast<size_t>(var_of(q));
        if (q == lnot(l) || static_cast<int>(v) == var_of(l)) continue;
        if (!seen_[v] && level_[v] > 0) return false;
    }
    return true;
}

void Solver::analyze(uint32_t confl, std::vector<SLit>& learnt, int& bt_level) {
    learnt.assign(1, 0);
    int pending = 0;
    SLit p = 0;
    bool have_p = false;
    size_t idx = trail_.size();
    for (;;) {
        Clause& c = clauses_[confl];
        if (c.learnt) bump_clause(c);
        for (SLit q : c.lits) {
            if (have_p && q == p) continue;
            auto v = static_cast<size_t>(var_of(q));
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            bump_var(var_of(q));
            if (level_[v] >= level()) ++pending;
            else learnt.push_back(q);
        }
        while (!seen_[static_cast<size_t>(var_of(trail_[--idx]))]) {}
        p = trail_[idx];
        have_p = true;
        confl = reason_[static_cast<size_t>(var_of(p))];
        seen_[static_cast<size_t>(var_of(p))] = 0;
        if (--pending == 0) break;
    }
    learnt[0] = lnot(p);

    std::vector<SLit> all(learnt.begin() + 1, learnt.end());
    size_t keep = 1;
    for (size_t i = 1; i < learnt.size(); ++i)
        if (!redundant(learnt[i])) learnt[keep++] = learnt[i];
    learnt.resize(keep);
    for (SLit q : all) seen_[static_cast<size_t>(var_of(q))] = 0;

    bt_level = 0;
    if (learnt.size() > 1) {
        size_t best = 1;
        for (size_t i = 2; i < learnt.size(); ++i)
            if (level_[static_cast<size_t>(var_of(learnt[i]))] > level_[static_cast<size_t>(var_of(learnt[best]))]) best = i;
        std::swap(learnt[1], learnt[best]);
        bt_level = level_[static_cast<size_t>(var_of(learnt[1]))];
    }
}

void Solver::cancel_until(int lvl) {
    if (level() <= lvl) return;
    for (size_t i = trail_.size(); i-- > trail_lim_[static_cast<size_t>(lvl)];) {
        auto v = static_cast<size_t>(var_of(trail_[i]));
        phase_[v] = assign_[v];
        assign_[v] = kUndef;
        reason_[v] = kNoReason;
        if (heap_pos_[v] < 0) heap_insert(static_cast<int>(v));
    }
    trail_.resize(trail_lim_[static_cast<size_t>(lvl)]);
    trail_lim_.resize(static_cast<size_t>(lvl));
    qhead_ = trail_.size();
}

int Solver::pick_branch() {
    while (!heap_.empty()) {
        int v = heap_pop();
        if (assign_[static_cast<size_t>(v)] == kUndef) return v;
    }
    return -1;
}

void Solver::bump_var(int v) {
    auto i = static_cast<size_t>(v);
    if ((activity_[i] += var_inc_) > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[i] >= 0) heap_up(static_cast<size_t>(heap_pos_[i]));
}

void Solver::bump_clause(Clause& c) {
    if ((c.activity += cla_inc_) > 1e20) {
        for (uint32_t r : learnts_) clauses_[r].activity *= 1e-20;
        cla_inc_ *= 1e-20;
    }
}

bool Solver::locked(uint32_t cref) const {
    const Clause& c = clauses_[cref];
    auto v = static_cast<size_t>(var_of(c.lits[0]));
    return reason_[v] == cref && value(c.lits[0]) == 1;
}

void Solver::reduce_db() {
    std::sort(learnts_.begin(), learnts_.end(),
              [&](uint32_t a, uint32_t b) { return clauses_[a].activity < clauses_[b].activity; });
    std::vector<uint32_t> kept;
    const size_t half = learnts_.size() / 2;
    for (size_t i = 0; i < learnts_.size(); ++i) {
        Clause& c = clauses_[learnts_[i]];
        if (i < half && c.lits.size() > 2 && !locked(learnts_[i])) {
            c.deleted = true;
            c.lits.clear();
            c.lits.shrink_to_fit();
        } else {
            kept.push_back(learnts_[i]);
        }
    }
    learnts_ = std::move(kept);
    for (auto& ws : watches_)
        ws.erase(std::remove_if(ws.begin(), ws.end(), [&](const Watcher& w) { return clauses_[w.cref].deleted; }), ws.end());
}

Result Solver::solve(const std::vector<SLit>& assumptions, int64_t conflict_budget) {
    model_.clear();
    if (!ok_) return Result::Unsat;
    for (SLit a : assumptions)
        if (var_of(a) >= num_vars()) throw Error("assumption refers to an unknown variable");
    if (max_learnts_ < 1) max_learnts_ = std::max<double>(static_cast<double>(num_original_) / 3.0, 2000.0);
    const uint64_t start = conflicts_;
    std::vector<SLit> learnt;
    Result result = Result::Unknown;
    for (int restart = 0; result == Result::Unknown; ++restart) {
        const auto limit = static_cast<uint64_t>(luby(2, restart) * 100);
        uint64_t local = 0;
        for (;;) {
            uint32_t confl = propagate();
            if (confl != kNoReason) {
                ++conflicts_;
                ++local;
                if (level() == 0) {
                    ok_ = false;
                    result = Result::Unsat;
                    break;
                }
                int bt = 0;
                analyze(confl, learnt, bt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kNoReason);
                } else {
                    clauses_.push_back(Clause{learnt, true, false, 0});
                    auto cref = static_cast<uint32_t>(clauses_.size() - 1);
                    attach(cref);
                    bump_clause(clauses_[cref]);
                    learnts_.push_back(cref);
                    enqueue(learnt[0], cref);
                }
                var_inc_ /= 0.95;
                cla_inc_ /= 0.999;
                continue;
            }
            if (conflict_budget >= 0 && conflicts_ - start >= static_cast<uint64_t>(conflict_budget)) {
                cancel_until(0);
                return Result::Unknown;
            }
            if (local >= limit) {
                cancel_until(0);
                break;
            }
            if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_) {
                reduce_db();
                max_learnts_ *= 1.1;
            }
            SLit next = 0;
            bool have = false;
            while (static_cast<size_t>(level()) < assumptions.size()) {
                SLit a = assumptions[static_cast<size_t>(level())];
                if (value(a) == 1) {
                    trail_lim_.push_back(trail_.size());
                } else if (value(a) == 0) {
                    cancel_until(0);
                    return Result::Unsat;
                } else {
                    next = a;
                    have = true;
                    break;
                }
            }
            if (!have) {
                int v = pick_branch();
                if (v < 0) {
                    model_.assign(static_cast<size_t>(num_vars()), false);
                    for (size_t i = 0; i < model_.size(); ++i) model_[i] = assign_[i] == 1;
                    result = Result::Sat;
                    break;
                }
                next = phase_[static_cast<size_t>(v)] == 1 ? pos(v) : neg(v);
            }
            trail_lim_.push_back(trail_.size());
            enqueue(next, kNoReason);
        }
    }
    cancel_until(0);
    return result;
}

void Solver::heap_insert(int v) {
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_.size() - 1);
}

void Solver::heap_up(size_t i) {
    int v = heap_[i];
    while (i > 0) {
        size_t parent = (i - 1) / 2;
        if (activity_[static_cast<size_t>(heap_[parent])] >= activity_[static_cast<size_t>(v)]) break;
        heap_[i] = heap_[parent];
        heap_pos_[static_cast<size_t>(heap_[i])] = static_cast<int>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_down(size_t i) {
    int v = heap_[i];
    for (;;) {
        size_t child = 2 * i + 1;
        if (child >= heap_.size()) break;
        if (child + 1 < heap_.size() &&
            activity_[static_cast<size_t>(heap_[child + 1])] > activity_[static_cast<size_t>(heap_[child])])
            ++child;
        if (activity_[static_cast<size_t>(heap_[child])] <= activity_[static_cast<size_t>(v)]) break;
        heap_[i] = heap_[child];
        heap_pos_[static_cast<size_t>(heap_[i])] = static_cast<int>(i);
        i = child;
    }
    heap_[i] = v;
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(i);
}

int Solver::heap_pop() {
    int top = heap_[0];
    heap_pos_[static_cast<size_t>(top)] = -1;
    int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[static_cast<size_t>(last)] = 0;
        heap_down(0);
    }
    return top;
}

std::string to_dimacs(const Cnf& cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto& c : cnf.clauses) {
        for (int l : c) out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

Result solve_cnf(const Cnf& cnf, std::vector<bool>* model, int64_t conflict_budget) {
    Solver s;
    for (int v = 0; v < cnf.num_vars; ++v) s.new_var();
    for (const auto& c : cnf.clauses) {
        std::vector<SLit> lits;
        for (int l : c) {
            if (l == 0 || std::abs(l) > cnf.num_vars) throw Error("bad DIMACS literal " + std::to_string(l));
            lits.push_back(l > 0 ? pos(l - 1) : neg(-l - 1));
        }
        if (!s.add_clause(lits)) return Result::Unsat;
    }
    Result r = s.solve({}, conflict_budget);
    if (r == Result::Sat && model) {
        model->assign(static_cast<size_t>(cnf.num_vars) + 1, false);
        for (int v = 0; v < cnf.num_vars; ++v) (*model)[static_cast<size_t>(v) + 1] = s.model_value(v);
    }
    return r;
}

} // namespace j2aig::sat
