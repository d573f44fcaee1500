#include "nalab/sat.hpp"

#include <algorithm>
#include <cassert>

namespace nalab::sat {

std::uint32_t Solver::new_var() {
  auto v = static_cast<std::uint32_t>(assign_.size());
  assign_.push_back(kUndef);
  level_.push_back(0);
  reason_.push_back(-1);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return v;
}

int Solver::attach(std::vector<Lit> clause) {
  int idx = static_cast<int>(clauses_.size());
  watches_[(~clause[0]).x].push_back(idx);
  watches_[(~clause[1]).x].push_back(idx);
  clauses_.push_back(std::move(clause));
  return idx;
}

bool Solver::add_clause(std::vector<Lit> clause) {
  if (unsat_) return false;
  // Clauses are only added at decision level 0.
  backtrack(0);
  std::sort(clause.begin(), clause.end(), [](Lit a, Lit b) { return a.x < b.x; });
  std::vector<Lit> c;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    Lit l = clause[i];
    if (i + 1 < clause.size() && clause[i + 1] == ~l) return true;  // tautology
    if (!c.empty() && c.back() == l) continue;
    std::int8_t v = lit_value(l);
    if (v == kTrue) return true;
    if (v == kFalse) continue;
    c.push_back(l);
  }
  if (c.empty()) {
    unsat_ = true;
    return false;
  }
  if (c.size() == 1) {
    enqueue(c[0], -1);
    if (propagate() >= 0) unsat_ = true;
    return !unsat_;
  }
  attach(std::move(c));
  return true;
}

void Solver::enqueue(Lit l, int reason) {
  assert(lit_value(l) == kUndef);
  assign_[l.var()] = l.negated() ? kFalse : kTrue;
  level_[l.var()] = static_cast<int>(trail_lim_.size());
  reason_[l.var()] = reason;
  trail_.push_back(l);
}

// Returns the index of a conflicting clause, or -1.
int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    // Clauses watching ~p (stored under p's code) may have lost a true candidate.
    auto& ws = watches_[p.x];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      int ci = ws[i];
      auto& c = clauses_[ci];
      Lit false_lit = ~p;
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == kTrue) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[(~c[1]).x].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = ci;
      if (lit_value(c[0]) == kFalse) {
        for (std::size_t k = i + 1; k < ws.size(); ++k) ws[keep++] = ws[k];
        ws.resize(keep);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(keep);
  }
  return -1;
}

void Solver::analyze(int conflict, std::vector<Lit>& learnt, int& back_level) {
  learnt.assign(1, Lit{});
  int cur_level = static_cast<int>(trail_lim_.size());
  int pending = 0;
  Lit p{};
  bool have_p = false;
  std::size_t idx = trail_.size();
  int ci = conflict;
  std::vector<std::uint32_t> touched;
  for (;;) {
    const auto& c = clauses_[ci];
    for (std::size_t k = have_p ? 1 : 0; k < c.size(); ++k) {
      Lit q = c[k];
      std::uint32_t v = q.var();
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      touched.push_back(v);
      if (level_[v] == cur_level) {
        ++pending;
      } else {
        learnt.push_back(q);
      }
    }
    do {
      p = trail_[--idx];
    } while (!seen_[p.var()]);
    have_p = true;
    seen_[p.var()] = 0;
    --pending;
    if (pending == 0) break;
    ci = reason_[p.var()];
    assert(ci >= 0);
    // Reason clauses keep their implied literal at position 0.
    assert(clauses_[ci][0] == p);
  }
  learnt[0] = ~p;
  for (std::uint32_t v : touched) seen_[v] = 0;

  back_level = 0;
  if (learnt.size() > 1) {
    std::size_t best = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[learnt[k].var()] > level_[learnt[best].var()]) best = k;
    std::swap(learnt[1], learnt[best]);
    back_level = level_[learnt[1].var()];
  }
}

void Solver::backtrack(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level) return;
  std::size_t stop = trail_lim_[level];
  for (std::size_t i = trail_.size(); i > stop; --i) {
    std::uint32_t v = trail_[i - 1].var();
    assign_[v] = kUndef;
    reason_[v] = -1;
    next_decision_ = std::min(next_decision_, v);
  }
  trail_.resize(stop);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

Result Solver::solve(const std::vector<Lit>& assumptions, std::uint64_t conflict_budget) {
  if (unsat_) return Result::Unsat;
  backtrack(0);
  if (propagate() >= 0) {
    unsat_ = true;
    return Result::Unsat;
  }
  next_decision_ = 0;
  std::uint64_t local = 0;
  std::vector<Lit> learnt;
  for (;;) {
    int conflict = propagate();
    if (conflict >= 0) {
      ++conflicts_;
      ++local;
      if (trail_lim_.empty()) {
        unsat_ = true;
        return Result::Unsat;
      }
      int back_level = 0;
      analyze(conflict, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        int ci = attach(learnt);
        enqueue(learnt[0], ci);
      }
      if (conflict_budget != 0 && local >= conflict_budget) {
        backtrack(0);
        return Result::Unknown;
      }
      continue;
    }
    if (trail_lim_.size() < assumptions.size()) {
      Lit a = assumptions[trail_lim_.size()];
      std::int8_t v = lit_value(a);
      if (v == kFalse) {
        backtrack(0);
        return Result::Unsat;
      }
      trail_lim_.push_back(trail_.size());
      if (v == kUndef) enqueue(a, -1);
      continue;
    }
    while (next_decision_ < assign_.size() && assign_[next_decision_] != kUndef) ++next_decision_;
    if (next_decision_ == assign_.size()) return Result::Sat;
    trail_lim_.push_back(trail_.size());
    enqueue(Lit::neg(next_decision_), -1);
  }
}

CnfBuilder::CnfBuilder() {
  true_ = Lit::pos(solver_.new_var());
  solver_.add_clause({true_});
}

void CnfBuilder::clause(std::vector<Lit> c) {
  std::vector<Lit> out;
  for (Lit l : c) {
    if (is_const(l)) {
      if (const_value(l)) return;
      continue;
    }
    out.push_back(l);
  }
  solver_.add_clause(std::move(out));
}

Lit CnfBuilder::and_of(const std::vector<Lit>& xs) {
  std::vector<Lit> ins;
  for (Lit l : xs) {
    if (is_const(l)) {
      if (!const_value(l)) return constant(false);
      continue;
    }
    if (std::find(ins.begin(), ins.end(), ~l) != ins.end()) return constant(false);
    if (std::find(ins.begin(), ins.end(), l) == ins.end()) ins.push_back(l);
  }
  if (ins.empty()) return constant(true);
  if (ins.size() == 1) return ins[0];
  Lit g = fresh();
  std::vector<Lit> big{g};
  for (Lit l : ins) {
    solver_.add_clause({~g, l});
    big.push_back(~l);
  }
  solver_.add_clause(std::move(big));
  return g;
}

Lit CnfBuilder::or_of(const std::vector<Lit>& xs) {
  std::vector<Lit> neg;
  neg.reserve(xs.size());
  for (Lit l : xs) neg.push_back(~l);
  return ~and_of(neg);
}

Lit CnfBuilder::iff(Lit a, Lit b) {
  if (a == b) return constant(true);
  if (a == ~b) return constant(false);
  if (is_const(a)) return const_value(a) ? b : ~b;
  if (is_const(b)) return const_value(b) ? a : ~a;
  Lit g = fresh();
  solver_.add_clause({~g, ~a, b});
  solver_.add_clause({~g, a, ~b});
  solver_.add_clause({g, a, b});
  solver_.add_clause({g, ~a, ~b});
  return g;
}

}  // namespace nalab::sat
