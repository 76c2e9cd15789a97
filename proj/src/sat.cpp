#include "bitinv/sat.hpp"

#include <algorithm>
#include <string>

namespace bitinv {

namespace {

constexpr int kNoReason = -1;

// Luby sequence: 1 1 2 1 1 2 4 1 1 2 ...
double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

} // namespace

Solver::Solver(SolverOptions options) : options_(options) {
  reserve_vars(0);
}

void Solver::reserve_vars(int n) {
  if (n <= num_vars_ && !assigns_.empty()) return;
  num_vars_ = std::max(num_vars_, n);
  const auto size = static_cast<std::size_t>(num_vars_) + 1;
  watches_.resize(2 * size + 2);
  assigns_.resize(size, -1);
  level_.resize(size, 0);
  reason_.resize(size, kNoReason);
  seen_.resize(size, 0);
  activity_.resize(size, 0.0);
}

void Solver::enqueue(int code, int reason) {
  const auto v = static_cast<std::size_t>(var_index(code));
  assigns_[v] = static_cast<signed char>((code & 1) ^ 1);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(code);
}

void Solver::attach(int ci) {
  const auto& lits = clauses_[static_cast<std::size_t>(ci)].lits;
  watches_[static_cast<std::size_t>(lits[0])].push_back(ci);
  watches_[static_cast<std::size_t>(lits[1])].push_back(ci);
}

void Solver::add_clause(Clause clause) {
  for (Lit l : clause)
    if (l == 0 || var_of(l) > num_vars_)
      throw std::out_of_range("clause literal " + std::to_string(l) +
                              " outside variable range");
  if (!ok_) return;
  cancel_until(0);

  std::vector<int> lits;
  for (Lit l : clause) lits.push_back(encode(l));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<int> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return; // tautology
    const int val = value(lits[i]);
    if (val == 1) return;
    if (val == -1) kept.push_back(lits[i]);
  }

  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    ++units_;
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return;
  }
  clauses_.push_back({std::move(kept), false});
  attach(static_cast<int>(clauses_.size()) - 1);
}

void Solver::add_formula(const CnfFormula& f) {
  reserve_vars(f.num_vars);
  for (const auto& c : f.clauses) add_clause(c);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const int p = trail_[qhead_++];
    const int false_lit = negate(p);
    auto& ws = watches_[static_cast<std::size_t>(false_lit)];
    ++stats_.propagations;

    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const int ci = ws[i++];
      auto& lits = clauses_[static_cast<std::size_t>(ci)].lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);

      if (value(lits[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != 0) {
          std::swap(lits[1], lits[k]);
          watches_[static_cast<std::size_t>(lits[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;

      ws[j++] = ci;
      if (value(lits[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(lits[0], ci);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::bump(int var) {
  if (!options_.vsids) return;
  auto& a = activity_[static_cast<std::size_t>(var)];
  a += bump_amount_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    bump_amount_ *= 1e-100;
    heap_.clear();
    for (int v = 1; v <= num_vars_; ++v)
      if (assigns_[static_cast<std::size_t>(v)] < 0)
        heap_.emplace_back(activity_[static_cast<std::size_t>(v)], heap_key(v));
    std::make_heap(heap_.begin(), heap_.end());
    return;
  }
  heap_.emplace_back(a, heap_key(var));
  std::push_heap(heap_.begin(), heap_.end());
}

void Solver::decay() {
  if (options_.vsids) bump_amount_ /= 0.95;
}

void Solver::analyze(int conflict, std::vector<int>& learnt, int& backjump) {
  learnt.assign(1, 0);
  int path_count = 0;
  int p = -1;
  std::size_t index = trail_.size();

  do {
    const auto& lits = clauses_[static_cast<std::size_t>(conflict)].lits;
    for (std::size_t k = (p == -1 ? 0 : 1); k < lits.size(); ++k) {
      const int q = lits[k];
      const auto v = static_cast<std::size_t>(var_index(q));
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump(static_cast<int>(v));
      if (level_[v] >= decision_level())
        ++path_count;
      else
        learnt.push_back(q);
    }
    while (!seen_[static_cast<std::size_t>(var_index(trail_[--index]))]) {
    }
    p = trail_[index];
    conflict = reason_[static_cast<std::size_t>(var_index(p))];
    seen_[static_cast<std::size_t>(var_index(p))] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = negate(p);

  backjump = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const int lvl = level_[static_cast<std::size_t>(var_index(learnt[k]))];
    if (lvl > backjump) {
      backjump = lvl;
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (std::size_t k = 1; k < learnt.size(); ++k)
    seen_[static_cast<std::size_t>(var_index(learnt[k]))] = 0;
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);
  for (std::size_t i = trail_.size(); i-- > stop;) {
    const int v = var_index(trail_[i]);
    assigns_[static_cast<std::size_t>(v)] = -1;
    reason_[static_cast<std::size_t>(v)] = kNoReason;
    if (options_.vsids) {
      heap_.emplace_back(activity_[static_cast<std::size_t>(v)], heap_key(v));
      std::push_heap(heap_.begin(), heap_.end());
    } else {
      order_head_ = std::min(order_head_, static_cast<std::size_t>(order_pos_[static_cast<std::size_t>(v)]));
    }
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

void Solver::rebuild_order() {
  order_.clear();
  order_pos_.assign(static_cast<std::size_t>(num_vars_) + 1, 0);
  for (int v = 1; v <= num_vars_; ++v) order_.push_back(v);
  if (options_.order == DecisionOrder::Descending) std::reverse(order_.begin(), order_.end());
  for (std::size_t i = 0; i < order_.size(); ++i)
    order_pos_[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
  order_head_ = 0;

  if (options_.vsids) {
    heap_.clear();
    for (int v = 1; v <= num_vars_; ++v)
      heap_.emplace_back(activity_[static_cast<std::size_t>(v)], heap_key(v));
    std::make_heap(heap_.begin(), heap_.end());
  }
}

int Solver::pick_branch() {
  if (options_.vsids) {
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end());
      const int v = heap_var(heap_.back().second);
      heap_.pop_back();
      if (assigns_[static_cast<std::size_t>(v)] < 0) return v;
    }
    return 0;
  }
  while (order_head_ < order_.size() &&
         assigns_[static_cast<std::size_t>(order_[order_head_])] >= 0)
    ++order_head_;
  return order_head_ < order_.size() ? order_[order_head_] : 0;
}

SatResult Solver::solve() {
  ++stats_.solves;
  if (!ok_) return std::nullopt;
  cancel_until(0);
  rebuild_order();
  if (propagate() != kNoReason) {
    ok_ = false;
    return std::nullopt;
  }

  std::uint64_t conflicts_this_call = 0;
  int restart_round = 0;
  std::uint64_t restart_budget = static_cast<std::uint64_t>(100 * luby(2, restart_round));
  std::uint64_t since_restart = 0;
  std::vector<int> learnt;

  while (true) {
    const int conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      ++conflicts_this_call;
      ++since_restart;
      if (decision_level() == 0) {
        ok_ = false;
        return std::nullopt;
      }
      if (conflicts_this_call > options_.max_conflicts) {
        cancel_until(0);
        throw ResourceError("conflict budget of " + std::to_string(options_.max_conflicts) +
                            " exceeded");
      }
      int backjump = 0;
      analyze(conflict, learnt, backjump);
      cancel_until(backjump);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        clauses_.push_back({learnt, true});
        const int ci = static_cast<int>(clauses_.size()) - 1;
        attach(ci);
        enqueue(learnt[0], ci);
      }
      ++stats_.learnt;
      decay();
      continue;
    }

    if (options_.vsids && since_restart >= restart_budget) {
      cancel_until(0);
      since_restart = 0;
      restart_budget = static_cast<std::uint64_t>(100 * luby(2, ++restart_round));
      continue;
    }

    const int next = pick_branch();
    if (next == 0) {
      Model model;
      model.values.assign(static_cast<std::size_t>(num_vars_) + 1, false);
      for (int v = 1; v <= num_vars_; ++v)
        model.values[static_cast<std::size_t>(v)] = assigns_[static_cast<std::size_t>(v)] == 1;
      cancel_until(0);
      return model;
    }
    ++stats_.decisions;
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(encode(-next), kNoReason);
  }
}

SatResult solve(const CnfFormula& f, SolverOptions options) {
  Solver solver(options);
  solver.add_formula(f);
  return solver.solve();
}

} // namespace bitinv
