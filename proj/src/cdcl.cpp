#include "schur/cdcl.hpp"

#include "schur/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <random>

namespace schur::cdcl {

namespace {

constexpr double var_decay = 0.95;
constexpr double clause_decay = 0.999;
constexpr std::uint64_t restart_unit = 100;
constexpr std::uint64_t first_reduce = 2000;
constexpr std::uint64_t reduce_increment = 300;

double luby(double y, std::uint64_t x)
{
    std::uint64_t size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    return std::pow(y, seq);
}

} // namespace

Solver::Solver(std::size_t num_vars)
    : num_vars_(num_vars), watches_(2 * num_vars), vals_(2 * num_vars, 0), levels_(num_vars, 0),
      reasons_(num_vars, no_ref), phase_(num_vars, false), var_act_(num_vars, 0.0), heap_pos_(num_vars, -1),
      seen_(num_vars, 0), model_(num_vars + 1, false)
{
    if (num_vars >= (1u << 30))
        throw SizeError("cdcl: too many variables");
    heap_.reserve(num_vars);
    for (std::uint32_t v = 0; v < num_vars; ++v)
        heap_insert(v);
}

float Solver::activity(CRef c) const
{
    float a;
    std::memcpy(&a, &arena_[c + 2], sizeof a);
    return a;
}

void Solver::set_activity(CRef c, float a)
{
    std::memcpy(&arena_[c + 2], &a, sizeof a);
}

Solver::CRef Solver::alloc(std::span<const Lit> ls, bool is_learnt, std::uint32_t lbd_value)
{
    if (arena_.size() + ls.size() + 3 >= no_ref)
        throw SizeError("cdcl: clause arena exhausted");
    const auto c = static_cast<CRef>(arena_.size());
    arena_.push_back(static_cast<std::uint32_t>(ls.size()));
    arena_.push_back((is_learnt ? 1u : 0u) | (lbd_value << 2));
    arena_.push_back(0);
    arena_.insert(arena_.end(), ls.begin(), ls.end());
    return c;
}

void Solver::attach(CRef c)
{
    const Lit* ls = lits(c);
    watches_[ls[0]].push_back({c, ls[1]});
    watches_[ls[1]].push_back({c, ls[0]});
}

bool Solver::add_clause(std::span<const std::int32_t> dimacs)
{
    if (!ok_)
        return false;
    std::vector<Lit> ls;
    ls.reserve(dimacs.size());
    for (auto d : dimacs) {
        if (d == 0 || static_cast<std::size_t>(std::abs(d)) > num_vars_)
            throw InputError("cdcl: literal out of range");
        ls.push_back(make_lit(d));
    }
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (i + 1 < ls.size() && ls[i + 1] == (ls[i] ^ 1u))
            return true; // tautology
        if (value(ls[i]) > 0)
            return true;
        if (value(ls[i]) == 0)
            ls[j++] = ls[i];
    }
    ls.resize(j);
    if (ls.empty()) {
        ok_ = false;
        return false;
    }
    if (ls.size() == 1) {
        enqueue(ls[0], no_ref);
        if (propagate() != no_ref)
            ok_ = false;
        return ok_;
    }
    CRef c = alloc(ls, false, 0);
    originals_.push_back(c);
    attach(c);
    return true;
}

void Solver::enqueue(Lit l, CRef reason)
{
    vals_[l] = 1;
    vals_[l ^ 1u] = -1;
    levels_[var(l)] = level();
    reasons_[var(l)] = reason;
    trail_.push_back(l);
}

Solver::CRef Solver::propagate()
{
    CRef confl = no_ref;
    while (qhead_ < trail_.size()) {
        const Lit p = trail_[qhead_++];
        const Lit false_lit = p ^ 1u;
        auto& ws = watches_[false_lit];
        ++stats_.propagations;
        std::size_t i = 0, j = 0;
        const std::size_t end = ws.size();
        while (i < end) {
            Watcher w = ws[i++];
            if (value(w.blocker) > 0) {
                ws[j++] = w;
                continue;
            }
            Lit* c = lits(w.cref);
            if (c[0] == false_lit)
                std::swap(c[0], c[1]);
            const Lit first = c[0];
            Watcher nw{w.cref, first};
            if (first != w.blocker && value(first) > 0) {
                ws[j++] = nw;
                continue;
            }
            const std::uint32_t size = csize(w.cref);
            bool moved = false;
            for (std::uint32_t k = 2; k < size; ++k) {
                if (value(c[k]) >= 0) {
                    c[1] = c[k];
                    c[k] = false_lit;
                    watches_[c[1]].push_back(nw);
                    moved = true;
                    break;
                }
            }
            if (moved)
                continue;
            ws[j++] = nw;
            if (value(first) < 0) {
                confl = w.cref;
                qhead_ = trail_.size();
                while (i < end)
                    ws[j++] = ws[i++];
            } else {
                enqueue(first, w.cref);
            }
        }
        ws.resize(j);
        if (confl != no_ref)
            break;
    }
    return confl;
}

void Solver::bump_var(std::uint32_t v)
{
    if ((var_act_[v] += var_inc_) > 1e100) {
        for (auto& a : var_act_)
            a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0)
        heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::bump_clause(CRef c)
{
    float a = activity(c) + static_cast<float>(cla_inc_);
    set_activity(c, a);
    if (a > 1e20f) {
        for (CRef l : learnts_)
            set_activity(l, activity(l) * 1e-20f);
        cla_inc_ *= 1e-20;
    }
}

bool Solver::redundant(Lit p, std::uint32_t abstract_levels)
{
    stack_.clear();
    stack_.push_back(p);
    const std::size_t top = to_clear_.size();
    while (!stack_.empty()) {
        const CRef r = reasons_[var(stack_.back())];
        stack_.pop_back();
        const Lit* c = lits(r);
        const std::uint32_t size = csize(r);
        for (std::uint32_t i = 1; i < size; ++i) {
            const Lit q = c[i];
            const std::uint32_t v = var(q);
            if (seen_[v] || levels_[v] == 0)
                continue;
            if (reasons_[v] != no_ref && (abstract_level(v) & abstract_levels) != 0) {
                seen_[v] = 1;
                stack_.push_back(q);
                to_clear_.push_back(q);
            } else {
                for (std::size_t k = top; k < to_clear_.size(); ++k)
                    seen_[var(to_clear_[k])] = 0;
                to_clear_.resize(top);
                return false;
            }
        }
    }
    return true;
}

void Solver::analyze(CRef confl, std::vector<Lit>& out, int& bt_level, std::uint32_t& out_lbd)
{
    out.clear();
    out.push_back(no_lit);
    int path = 0;
    Lit p = no_lit;
    std::size_t index = trail_.size();
    do {
        if (learnt(confl))
            bump_clause(confl);
        const Lit* c = lits(confl);
        const std::uint32_t size = csize(confl);
        for (std::uint32_t i = (p == no_lit ? 0 : 1); i < size; ++i) {
            const Lit q = c[i];
            const std::uint32_t v = var(q);
            if (seen_[v] || levels_[v] == 0)
                continue;
            bump_var(v);
            seen_[v] = 1;
            if (levels_[v] >= level())
                ++path;
            else
                out.push_back(q);
        }
        while (!seen_[var(trail_[--index])]) {
        }
        p = trail_[index];
        confl = reasons_[var(p)];
        seen_[var(p)] = 0;
        --path;
    } while (path > 0);
    out[0] = p ^ 1u;

    to_clear_.assign(out.begin(), out.end());
    std::uint32_t abstract_levels = 0;
    for (std::size_t i = 1; i < out.size(); ++i)
        abstract_levels |= abstract_level(var(out[i]));
    std::size_t j = 1;
    for (std::size_t i = 1; i < out.size(); ++i) {
        const std::uint32_t v = var(out[i]);
        if (reasons_[v] == no_ref || !redundant(out[i], abstract_levels))
            out[j++] = out[i];
    }
    out.resize(j);
    for (Lit l : to_clear_)
        seen_[var(l)] = 0;
    to_clear_.clear();

    bt_level = 0;
    if (out.size() > 1) {
        std::size_t max_i = 1;
        for (std::size_t i = 2; i < out.size(); ++i)
            if (levels_[var(out[i])] > levels_[var(out[max_i])])
                max_i = i;
        std::swap(out[1], out[max_i]);
        bt_level = levels_[var(out[1])];
    }

    ++stamp_;
    if (level_stamp_.size() < static_cast<std::size_t>(level()) + 1)
        level_stamp_.resize(static_cast<std::size_t>(level()) + 1, 0);
    out_lbd = 0;
    for (Lit l : out) {
        auto& s = level_stamp_[static_cast<std::size_t>(levels_[var(l)])];
        if (s != stamp_) {
            s = stamp_;
            ++out_lbd;
        }
    }
}

void Solver::cancel_until(int lvl)
{
    if (level() <= lvl)
        return;
    const std::size_t keep = trail_lim_[static_cast<std::size_t>(lvl)];
    for (std::size_t i = trail_.size(); i-- > keep;) {
        const Lit l = trail_[i];
        const std::uint32_t v = var(l);
        vals_[l] = 0;
        vals_[l ^ 1u] = 0;
        reasons_[v] = no_ref;
        phase_[v] = (l & 1u) == 0;
        if (heap_pos_[v] < 0)
            heap_insert(v);
    }
    trail_.resize(keep);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = trail_.size();
}

Solver::Lit Solver::pick_branch()
{
    while (!heap_.empty()) {
        const std::uint32_t v = heap_pop();
        if (vals_[2 * v] == 0)
            return 2 * v + (phase_[v] ? 0u : 1u);
    }
    return no_lit;
}

void Solver::reduce_db()
{
    ++stats_.reductions;
    std::vector<CRef> cand;
    std::vector<CRef> keep;
    for (CRef c : learnts_) {
        const Lit l0 = lits(c)[0];
        const bool locked = value(l0) > 0 && reasons_[var(l0)] == c;
        if (locked || lbd(c) <= 2)
            keep.push_back(c);
        else
            cand.push_back(c);
    }
    std::sort(cand.begin(), cand.end(), [&](CRef a, CRef b) {
        if (lbd(a) != lbd(b))
            return lbd(a) > lbd(b);
        return activity(a) < activity(b);
    });
    const std::size_t drop = cand.size() / 2;
    for (std::size_t i = 0; i < drop; ++i)
        arena_[cand[i] + 1] |= 2u;
    for (std::size_t i = drop; i < cand.size(); ++i)
        keep.push_back(cand[i]);
    learnts_ = std::move(keep);
    rebuild();
}

// Compacts the arena, dropping deleted clauses, and rebuilds every watch list.
void Solver::rebuild()
{
    std::vector<std::uint32_t> fresh;
    fresh.reserve(arena_.size());
    auto move = [&](CRef c) {
        const auto n = static_cast<CRef>(fresh.size());
        fresh.insert(fresh.end(), arena_.begin() + c, arena_.begin() + c + 3 + csize(c));
        // forwarding pointer in the old activity slot
        arena_[c + 2] = n;
        return n;
    };
    for (auto& c : originals_)
        c = move(c);
    std::sort(learnts_.begin(), learnts_.end());
    for (auto& c : learnts_)
        c = move(c);
    for (Lit l : trail_) {
        CRef& r = reasons_[var(l)];
        if (r != no_ref)
            r = arena_[r + 2];
    }
    arena_ = std::move(fresh);
    for (auto& ws : watches_)
        ws.clear();
    for (CRef c : originals_)
        attach(c);
    for (CRef c : learnts_)
        attach(c);
}

bool Solver::heap_less(std::uint32_t a, std::uint32_t b) const
{
    // a sits above b in the heap
    if (var_act_[a] != var_act_[b])
        return var_act_[a] > var_act_[b];
    return a < b;
}

void Solver::heap_up(std::size_t i)
{
    const std::uint32_t v = heap_[i];
    while (i > 0) {
        const std::size_t parent = (i - 1) / 2;
        if (!heap_less(v, heap_[parent]))
            break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = static_cast<int>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i)
{
    const std::uint32_t v = heap_[i];
    const std::size_t n = heap_.size();
    while (true) {
        std::size_t child = 2 * i + 1;
        if (child >= n)
            break;
        if (child + 1 < n && heap_less(heap_[child + 1], heap_[child]))
            ++child;
        if (!heap_less(heap_[child], v))
            break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = static_cast<int>(i);
        i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_insert(std::uint32_t v)
{
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_.size() - 1);
}

std::uint32_t Solver::heap_pop()
{
    const std::uint32_t top = heap_.front();
    heap_pos_[top] = -1;
    const std::uint32_t last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[last] = 0;
        heap_down(0);
    }
    return top;
}

Status Solver::solve(const Limits& limits)
{
    stop_reason_.clear();
    if (!ok_)
        return Status::unsat;
    if (limits.seed != 0) {
        std::mt19937_64 rng(limits.seed);
        std::uniform_real_distribution<double> jitter(0.0, 1e-5);
        for (std::uint32_t v = 0; v < num_vars_; ++v) {
            var_act_[v] += jitter(rng);
            phase_[v] = (rng() & 1u) != 0;
        }
        heap_.clear();
        std::fill(heap_pos_.begin(), heap_pos_.end(), -1);
        for (std::uint32_t v = 0; v < num_vars_; ++v)
            if (vals_[2 * v] == 0)
                heap_insert(v);
    }

    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto out_of_budget = [&]() -> bool {
        if (limits.conflicts && stats_.conflicts >= *limits.conflicts) {
            stop_reason_ = "conflict budget exhausted";
            return true;
        }
        if (limits.seconds && std::chrono::duration<double>(clock::now() - start).count() >= *limits.seconds) {
            stop_reason_ = "time budget exhausted";
            return true;
        }
        if (limits.interrupt && limits.interrupt->load()) {
            stop_reason_ = "interrupted";
            return true;
        }
        return false;
    };

    if (propagate() != no_ref) {
        ok_ = false;
        return Status::unsat;
    }

    std::vector<Lit> learnt_lits;
    std::uint64_t next_reduce = first_reduce;
    std::uint64_t reduce_count = 0;
    std::uint64_t restart_index = 0;
    std::uint64_t since_check = 0;

    while (true) {
        const auto restart_limit =
            static_cast<std::uint64_t>(luby(2.0, restart_index) * static_cast<double>(restart_unit));
        std::uint64_t conflicts_here = 0;
        while (true) {
            const CRef confl = propagate();
            if (confl != no_ref) {
                ++stats_.conflicts;
                ++conflicts_here;
                if (level() == 0) {
                    ok_ = false;
                    return Status::unsat;
                }
                int bt = 0;
                std::uint32_t glue = 0;
                analyze(confl, learnt_lits, bt, glue);
                cancel_until(bt);
                stats_.learnt_literals += learnt_lits.size();
                if (learnt_lits.size() == 1) {
                    enqueue(learnt_lits[0], no_ref);
                } else {
                    const CRef c = alloc(learnt_lits, true, std::min<std::uint32_t>(glue, (1u << 29)));
                    learnts_.push_back(c);
                    attach(c);
                    bump_clause(c);
                    enqueue(learnt_lits[0], c);
                }
                var_inc_ /= var_decay;
                cla_inc_ /= clause_decay;
                const bool hit_conflict_cap = limits.conflicts && stats_.conflicts >= *limits.conflicts;
                if ((hit_conflict_cap || (stats_.conflicts & 255u) == 0) && out_of_budget()) {
                    cancel_until(0);
                    return Status::unknown;
                }
                continue;
            }
            if (conflicts_here >= restart_limit) {
                ++stats_.restarts;
                cancel_until(0);
                break;
            }
            if (stats_.conflicts >= next_reduce) {
                ++reduce_count;
                next_reduce = stats_.conflicts + first_reduce + reduce_increment * reduce_count;
                reduce_db();
            }
            if (++since_check >= 4096) {
                since_check = 0;
                if (out_of_budget()) {
                    cancel_until(0);
                    return Status::unknown;
                }
            }
            const Lit next = pick_branch();
            if (next == no_lit) {
                for (std::uint32_t v = 0; v < num_vars_; ++v)
                    model_[v + 1] = vals_[2 * v] > 0;
                cancel_until(0);
                return Status::sat;
            }
            ++stats_.decisions;
            trail_lim_.push_back(trail_.size());
            enqueue(next, no_ref);
        }
        ++restart_index;
    }
}

} // namespace schur::cdcl
