// Incremental CDCL SAT solver with two watched literals, VSIDS, phase saving,
// Luby restarts and assumptions.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace j2aig::sat {

/// `2 * var + negated`.
using SLit = uint32_t;

inline constexpr SLit pos(int v) { return static_cast<SLit>(v) << 1; }
inline constexpr SLit neg(int v) { return (static_cast<SLit>(v) << 1) | 1U; }
inline constexpr SLit lnot(SLit l) { return l ^ 1U; }
inline constexpr int var_of(SLit l) { return static_cast<int>(l >> 1); }
inline constexpr bool is_neg(SLit l) { return (l & 1U) != 0; }

enum class Result { Sat, Unsat, Unknown };

class Solver {
public:
    int new_var();
    int num_vars() const { return static_cast<int>(assign_.size()); }
    size_t num_clauses() const { return num_original_; }
    uint64_t conflicts() const { return conflicts_; }

    /// Returns false once the clause set is unsatisfiable at level 0.
    bool add_clause(std::vector<SLit> lits);

    /// A negative budget means unlimited conflicts.
    Result solve(const std::vector<SLit>& assumptions = {}, int64_t conflict_budget = -1);

    /// Model of the last Sat answer; unassigned variables read as false.
    bool model_value(int v) const { return static_cast<size_t>(v) < model_.size() && model_[static_cast<size_t>(v)]; }
    bool model_value(SLit l) const { return model_value(var_of(l)) != is_neg(l); }

private:
    struct Clause {
        std::vector<SLit> lits;
        bool learnt = false;
        bool deleted = false;
        double activity = 0;
    };
    struct Watcher {
        uint32_t cref;
        SLit blocker;
    };
    static constexpr uint32_t kNoReason = UINT32_MAX;
    static constexpr int8_t kUndef = 2;

    int8_t value(SLit l) const {
        int8_t a = assign_[static_cast<size_t>(var_of(l))];
        return a == kUndef ? kUndef : static_cast<int8_t>(a ^ static_cast<int8_t>(is_neg(l)));
    }
    int level() const { return static_cast<int>(trail_lim_.size()); }
    void enqueue(SLit l, uint32_t reason);
    uint32_t propagate();
    void analyze(uint32_t confl, std::vector<SLit>& learnt, int& bt_level);
    bool redundant(SLit l) const;
    void cancel_until(int lvl);
    void attach(uint32_t cref);
    int pick_branch();
    void bump_var(int v);
    void bump_clause(Clause& c);
    void reduce_db();
    bool locked(uint32_t cref) const;

    void heap_insert(int v);
    void heap_up(size_t i);
    void heap_down(size_t i);
    int heap_pop();

    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<int8_t> assign_;
    std::vector<int8_t> phase_;
    std::vector<int> level_;
    std::vector<uint32_t> reason_;
    std::vector<double> activity_;
    std::vector<char> seen_;
    std::vector<SLit> trail_;
    std::vector<size_t> trail_lim_;
    size_t qhead_ = 0;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;
    std::vector<uint32_t> learnts_;
    std::vector<bool> model_;
    double var_inc_ = 1;
    double cla_inc_ = 1;
    double max_learnts_ = 0;
    uint64_t conflicts_ = 0;
    size_t num_original_ = 0;
    bool ok_ = true;
};

/// A plain clause list in DIMACS numbering (variables 1..num_vars).
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

std::string to_dimacs(const Cnf& cnf);
/// Solves a standalone formula; on Sat, `model` (if given) gets num_vars + 1
/// entries indexed by DIMACS variable.
Result solve_cnf(const Cnf& cnf, std::vector<bool>* model = nullptr, int64_t conflict_budget = -1);

} // namespace j2aig::sat
