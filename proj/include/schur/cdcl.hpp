#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace schur::cdcl {

enum class Status { sat, unsat, unknown };

struct Limits {
    std::optional<double> seconds;
    std::optional<std::uint64_t> conflicts;
    // 0 keeps the default deterministic order (VSIDS, ties by variable
    // index, negative phase first). Anything else perturbs the initial
    // activities and phases.
    std::uint64_t seed = 0;
    const std::atomic<bool>* interrupt = nullptr;
};

struct Stats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t restarts = 0;
    std::uint64_t reductions = 0;
    std::uint64_t learnt_literals = 0;
};

/// Conflict-driven clause learning solver over DIMACS-numbered variables.
/// Clauses may only be added before `solve`.
class Solver {
public:
    explicit Solver(std::size_t num_vars);

    std::size_t num_vars() const { return num_vars_; }

    /// Returns false once the clause set is known to be unsatisfiable.
    bool add_clause(std::span<const std::int32_t> lits);

    Status solve(const Limits& limits = {});

    /// Value of DIMACS variable v (1-based) in the last model.
    bool model_value(std::size_t v) const { return model_[v]; }
    const std::vector<bool>& model() const { return model_; }

    const Stats& stats() const { return stats_; }
    const std::string& stop_reason() const { return stop_reason_; }

private:
    using Lit = std::uint32_t;
    using CRef = std::uint32_t;
    static constexpr CRef no_ref = 0xffffffffu;
    static constexpr Lit no_lit = 0xffffffffu;

    struct Watcher {
        CRef cref;
        Lit blocker;
    };

    static Lit make_lit(std::int32_t dimacs) { return 2u * static_cast<Lit>(std::abs(dimacs) - 1) + (dimacs < 0); }
    static std::uint32_t var(Lit l) { return l >> 1; }

    // arena layout: [size][flags: learnt | deleted << 1 | lbd << 2][activity bits][lits...]
    std::uint32_t& csize(CRef c) { return arena_[c]; }
    std::uint32_t csize(CRef c) const { return arena_[c]; }
    bool learnt(CRef c) const { return arena_[c + 1] & 1u; }
    bool deleted(CRef c) const { return arena_[c + 1] & 2u; }
    std::uint32_t lbd(CRef c) const { return arena_[c + 1] >> 2; }
    float activity(CRef c) const;
    void set_activity(CRef c, float a);
    Lit* lits(CRef c) { return reinterpret_cast<Lit*>(&arena_[c + 3]); }
    const Lit* lits(CRef c) const { return reinterpret_cast<const Lit*>(&arena_[c + 3]); }

    CRef alloc(std::span<const Lit> ls, bool is_learnt, std::uint32_t lbd);
    void attach(CRef c);

    std::int8_t value(Lit l) const { return vals_[l]; }
    int level() const { return static_cast<int>(trail_lim_.size()); }
    void enqueue(Lit l, CRef reason);
    CRef propagate();
    void analyze(CRef confl, std::vector<Lit>& out, int& bt_level, std::uint32_t& out_lbd);
    bool redundant(Lit p, std::uint32_t abstract_levels);
    std::uint32_t abstract_level(std::uint32_t v) const { return 1u << (levels_[v] & 31); }
    void cancel_until(int lvl);
    Lit pick_branch();
    void reduce_db();
    void rebuild();

    void bump_var(std::uint32_t v);
    void bump_clause(CRef c);

    // binary max-heap of variables keyed by activity
    void heap_insert(std::uint32_t v);
    std::uint32_t heap_pop();
    void heap_up(std::size_t i);
    void heap_down(std::size_t i);
    bool heap_less(std::uint32_t a, std::uint32_t b) const;

    std::size_t num_vars_;
    bool ok_ = true;
    std::vector<std::uint32_t> arena_;
    std::vector<CRef> originals_;
    std::vector<CRef> learnts_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<std::int8_t> vals_;
    std::vector<int> levels_;
    std::vector<CRef> reasons_;
    std::vector<bool> phase_;
    std::vector<Lit> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;

    std::vector<double> var_act_;
    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    std::vector<std::uint32_t> heap_;
    std::vector<int> heap_pos_;

    std::vector<char> seen_;
    std::vector<Lit> stack_;
    std::vector<Lit> to_clear_;
    std::vector<std::uint32_t> level_stamp_;
    std::uint32_t stamp_ = 0;

    std::vector<bool> model_;
    Stats stats_;
    std::string stop_reason_;
};

} // namespace schur::cdcl
