#include <chrono>
#include <deque>
#include <memory>

#include "hyperplan/encoder.hpp"
#include "hyperplan/error.hpp"
#include "hyperplan/semantics.hpp"
#include "hyperplan/solver.hpp"

namespace hyperplan {
namespace {

using Clock = std::chrono::steady_clock;

std::optional<Clock::time_point> deadline_of(const Problem& p) {
  if (p.options.time_limit_s <= 0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(p.options.time_limit_s));
}

class Cegis {
 public:
  Cegis(const Problem& p, const Witness& fixed) : p_(p), fixed_(fixed), g_(exists_) {
    lead_ = leading_exists(p.formula);
    deadline_ = deadline_of(p);
    exists_.set_deadline(deadline_);
    if (p.options.randomized) exists_.set_random(p.options.seed, 0.02);
    for (int j = 0; j < lead_; ++j) {
      const std::string& var = p.formula.prefix[static_cast<std::size_t>(j)].var;
      if (auto it = fixed.find(var); it != fixed.end()) {
        owned_.push_back(std::make_unique<ConstPath>(p.dts, it->second, g_));
        sym_.push_back(nullptr);
      } else {
        auto sp = std::make_unique<SymbolicPath>(encode_path_constraint(exists_, p.dts, p.steps(j)));
        sym_.push_back(sp.get());
        owned_.push_back(std::move(sp));
      }
      paths_.push_back(owned_.back().get());
    }
  }

  Outcome run(int max_iters) {
    Outcome out;
    const int n = p_.num_paths();
    if (lead_ == n) {
      Unroller u(p_.formula, p_.dts, g_, paths_);
      exists_.add({u.root()});
    }
    for (int iter = 0;; ++iter) {
      out.iterations = iter;
      if (iter >= max_iters) {
        out.reason = "iteration limit reached";
        return out;
      }
      const SatStatus st = exists_.solve();
      if (st == SatStatus::Aborted) {
        out.reason = "time limit reached";
        return out;
      }
      if (st == SatStatus::Unsat) {
        out.status = Outcome::Status::Unrealizable;
        return out;
      }
      std::vector<Strategy> cand = candidate();
      if (lead_ == n) return realizable(out, cand);

      auto cex = verify(cand);
      if (!cex) {
        if (timed_out_) {
          out.reason = "time limit reached";
          return out;
        }
        return realizable(out, cand);
      }
      minimize(cand, *cex);
      refine(cand, *cex);
    }
  }

 private:
  std::vector<Strategy> candidate() const {
    std::vector<Strategy> out;
    for (int j = 0; j < lead_; ++j) {
      if (sym_[static_cast<std::size_t>(j)])
        out.push_back(decode(sym_[static_cast<std::size_t>(j)]->block(), exists_.model()));
      else
        out.push_back(fixed_.at(p_.formula.prefix[static_cast<std::size_t>(j)].var));
    }
    return out;
  }

  Outcome& realizable(Outcome& out, const std::vector<Strategy>& cand) const {
    out.status = Outcome::Status::Realizable;
    for (int j = 0; j < lead_; ++j)
      if (sym_[static_cast<std::size_t>(j)]) out.witness[p_.formula.prefix[static_cast<std::size_t>(j)].var] = cand[static_cast<std::size_t>(j)];
    return out;
  }

  // a valid assignment of the universal paths falsifying the matrix, if any
  std::optional<std::vector<Strategy>> verify(const std::vector<Strategy>& cand) {
    SatSolver s;
    s.set_deadline(deadline_);
    GateBuilder g(s);
    std::vector<std::unique_ptr<PathLits>> owned;
    std::vector<PathLits*> paths;
    std::vector<SymbolicPath*> univ;
    for (int j = 0; j < lead_; ++j) {
      owned.push_back(std::make_unique<ConstPath>(p_.dts, cand[static_cast<std::size_t>(j)], g));
      paths.push_back(owned.back().get());
    }
    for (int k = lead_; k < p_.num_paths(); ++k) {
      auto sp = std::make_unique<SymbolicPath>(encode_path_constraint(s, p_.dts, p_.steps(k)));
      univ.push_back(sp.get());
      paths.push_back(sp.get());
      owned.push_back(std::move(sp));
    }
    Unroller u(p_.formula, p_.dts, g, paths);
    s.add({-u.root()});
    const SatStatus st = s.solve();
    if (st == SatStatus::Aborted) timed_out_ = true;
    if (st != SatStatus::Sat) return std::nullopt;
    std::vector<Strategy> out;
    for (auto* sp : univ) out.push_back(decode(sp->block(), s.model()));
    return out;
  }

  // greedily copy the first existential path's choices into the counterexample
  // while it remains a valid counterexample
  void minimize(const std::vector<Strategy>& cand, std::vector<Strategy>& cex) const {
    if (lead_ == 0) return;
    Evaluator ev(p_.formula);
    for (int j = 0; j < lead_; ++j) ev.bind(j, correspond(p_.dts, cand[static_cast<std::size_t>(j)]));
    for (std::size_t k = 0; k < cex.size(); ++k) ev.bind(lead_ + static_cast<int>(k), correspond(p_.dts, cex[k]));
    const Strategy& ref = cand[0];
    for (std::size_t k = 0; k < cex.size(); ++k) {
      const int path = lead_ + static_cast<int>(k);
      auto attempt = [&](Strategy trial) {
        if (trial == cex[k] || !hyperplan::run(p_.dts, trial)) return;
        ev.bind(path, correspond(p_.dts, trial));
        if (!ev.root()) {
          cex[k] = std::move(trial);
        } else {
          ev.bind(path, correspond(p_.dts, cex[k]));
        }
      };
      Strategy t0 = cex[k];
      t0.init = ref.init;
      attempt(t0);
      for (std::size_t t = 0; t < cex[k].actions.size() && t < ref.actions.size(); ++t) {
        Strategy tr = cex[k];
        tr.actions[t] = ref.actions[t];
        attempt(tr);
      }
    }
  }

  void refine(const std::vector<Strategy>& cand, const std::vector<Strategy>& cex) {
    // ground instance: the counterexample paths as constants
    {
      std::vector<std::unique_ptr<PathLits>> owned;
      std::vector<PathLits*> paths = paths_;
      for (const auto& c : cex) {
        owned.push_back(std::make_unique<ConstPath>(p_.dts, c, g_));
        paths.push_back(owned.back().get());
      }
      Unroller u(p_.formula, p_.dts, g_, paths);
      exists_.add({u.root()});
    }
    // linked instance: choices that coincide with an existential path follow that path
    std::vector<std::unique_ptr<LinkedPath>> linked;
    bool any_link = false;
    for (const auto& c : cex) {
      auto match = [&](auto pred) -> SymbolicPath* {
        for (int j = 0; j < lead_; ++j)
          if (sym_[static_cast<std::size_t>(j)] && pred(j)) return sym_[static_cast<std::size_t>(j)];
        return nullptr;
      };
      LinkedPath::Choice init{c.init, match([&](int j) { return cand[static_cast<std::size_t>(j)].init == c.init; })};
      std::vector<LinkedPath::Choice> acts;
      for (std::size_t t = 0; t < c.actions.size(); ++t) {
        acts.push_back({c.actions[t], match([&](int j) {
                          const auto& a = cand[static_cast<std::size_t>(j)].actions;
                          return t < a.size() && a[t] == c.actions[t];
                        })});
      }
      any_link = any_link || init.link;
      for (const auto& a : acts) any_link = any_link || a.link;
      linked.push_back(std::make_unique<LinkedPath>(p_.dts, g_, init, std::move(acts)));
    }
    if (!any_link) return;
    std::vector<PathLits*> paths = paths_;
    for (auto& l : linked) paths.push_back(l.get());
    Unroller u(p_.formula, p_.dts, g_, paths);
    std::vector<int> clause{u.root()};
    if (!p_.dts.is_total())
      for (auto& l : linked) clause.push_back(-l->valid());
    exists_.add_clause(clause);
  }

  const Problem& p_;
  const Witness& fixed_;
  SatSolver exists_;
  GateBuilder g_;
  int lead_ = 0;
  std::optional<Clock::time_point> deadline_;
  bool timed_out_ = false;
  std::vector<std::unique_ptr<PathLits>> owned_;
  std::vector<SymbolicPath*> sym_;
  std::vector<PathLits*> paths_;
};

}  // namespace

Outcome solve_cegis_fixed(const Problem& p, const Witness& fixed, int max_iters) {
  if (!is_exists_forall(p.formula))
    throw Error(Errc::PrefixUnsupported, "CEGIS needs an exists* forall* prefix");
  Cegis c(p, fixed);
  return c.run(max_iters);
}

Outcome solve_cegis(const Problem& p, int max_iters) {
  Outcome out = solve_cegis_fixed(p, {}, max_iters);
  if (out.realizable()) {
    const CheckResult r = check_witness(p, out.witness, p.options.check_budget);
    if (!r.holds) {
      out.status = Outcome::Status::Unknown;
      out.reason = "candidate failed the witness check";
      out.witness.clear();
      return out;
    }
    out.verified = r.verified;
    out.checked = true;
  }
  return out;
}

}  // namespace hyperplan
