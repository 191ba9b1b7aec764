#include "exactcuts/branch_and_bound.hpp"

#include "exactcuts/certificate_builder.hpp"
#include "exactcuts/mir_proof.hpp"
#include "exactcuts/simplex.hpp"

#include <chrono>
#include <queue>
#include <stdexcept>

namespace exactcuts {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::time_limit: return "time-limit";
  }
  return "?";
}

Rational gap_closed(const Rational& p, const Rational& d1, const Rational& d2) {
  if (p == d1) throw std::domain_error("gap_closed: undefined for p == d1");
  Rational g = (d2 - d1) / (p - d1);
  if (g < 0) return 0;
  if (g > 1) return 1;
  return g;
}

std::optional<BranchChoice> choose_branch(const std::vector<Rational>& point, const std::vector<bool>& integer_vars) {
  std::optional<BranchChoice> best;
  Rational best_score;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (!integer_vars[j] || is_integer(point[j])) continue;
    const Rational f = frac_of(point[j]);
    const Rational score = f < 1 - f ? f : Rational(1 - f);
    if (!best || score > best_score) {
      best = BranchChoice{static_cast<int>(j), floor_of(point[j])};
      best_score = score;
    }
  }
  return best;
}

std::pair<Node, Node> branch(const Node& node, const BranchChoice& choice) {
  Node down = node, up = node;
  down.depth = up.depth = node.depth + 1;
  down.bounds[choice.variable].upper = Rational(choice.down_upper);
  up.bounds[choice.variable].lower = Rational(choice.down_upper + 1);
  return {down, up};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct TreeNode {
  Node node;
  int parent = -1;
  int asm_down = -1;
  int asm_up = -1;
  int children[2] = {-1, -1};
  int closed_children = 0;
  int claim = -1;
  std::optional<Rational> lp_bound;
};

struct OpenEntry {
  Rational bound;
  long seq;
  int id;
  bool operator<(const OpenEntry& o) const {
    // std::priority_queue is a max-heap: invert for best (lowest) bound, then FIFO.
    if (bound != o.bound) return bound > o.bound;
    return seq > o.seq;
  }
};

class Solver {
 public:
  Solver(const Problem& p, const SolverConfig& cfg) : p_(p), cfg_(cfg) {
    lp_ = lp_from_problem(p);
    for (const auto& v : p.variables) is_int_.push_back(v.is_integer);
    if (cfg.certificate) {
      cb_.emplace(p);
      row_refs_ = cb_->normalized_row_refs();
    }
  }

  SolveResult run() {
    start_ = Clock::now();
    Node root;
    root.bounds.resize(p_.num_vars());
    for (int j = 0; j < static_cast<int>(p_.num_vars()); ++j) {
      root.bounds[j].lower = p_.variables[j].lower;
      root.bounds[j].upper = p_.variables[j].upper;
      if (cb_) {
        root.bounds[j].lower_source = cb_->lower_bound_constraint(j).value_or(-1);
        root.bounds[j].upper_source = cb_->upper_bound_constraint(j).value_or(-1);
      }
    }
    TreeNode root_node;
    root_node.node = root;
    tree_.push_back(std::move(root_node));

    LpResult<Rational> root_res = exact(lp_);
    if (root_res.status == LpStatus::optimal) {
      result_.stats.root_bound_no_cuts = root_res.objective_value;
      if (cfg_.cuts && !integral(root_res.primal)) root_res = separate(root_res);
      if (root_res.status == LpStatus::optimal) result_.stats.root_bound = root_res.objective_value;
      result_.stats.root_cut_off = root_res.status == LpStatus::infeasible;
    }

    std::priority_queue<OpenEntry> open;
    long seq = 0;
    bool first = true;
    std::optional<LpResult<Rational>> pending = std::move(root_res);
    open.push({Rational(0), seq++, 0});
    bool limit_hit = false;
    while (!open.empty()) {
      if (limit_reached()) {
        limit_hit = true;
        break;
      }
      const OpenEntry e = open.top();
      open.pop();
      const int id = e.id;
      ++result_.node_count;
      LpResult<Rational> res = first ? std::move(*pending) : exact(node_lp(tree_[id].node));
      first = false;
      if (res.status == LpStatus::infeasible) {
        close(id, leaf_claim(id, res));
        continue;
      }
      tree_[id].lp_bound = res.objective_value;
      if (incumbent_value_ && res.objective_value >= *incumbent_value_) {
        close(id, leaf_claim(id, res));
        continue;
      }
      auto choice = choose_branch(res.primal, is_int_);
      if (!choice) {
        if (!satisfies(p_, res.primal)) throw std::logic_error("integral LP point violates the problem");
        incumbent_ = res.primal;
        incumbent_value_ = res.objective_value;
        close(id, leaf_claim(id, res));
        continue;
      }
      auto [down, up] = branch(tree_[id].node, *choice);
      const int j = choice->variable;
      if (cb_) {
        const SparseVec unit{{j, Rational(1)}};
        const std::string tag = "n" + std::to_string(id) + "_x" + std::to_string(j);
        tree_[id].asm_down = cb_->add_assumption(tag + "_dn", {"", Sense::le, Rational(choice->down_upper), unit});
        tree_[id].asm_up = cb_->add_assumption(tag + "_up", {"", Sense::ge, Rational(choice->down_upper + 1), unit});
        down.bounds[j].upper_source = tree_[id].asm_down;
        up.bounds[j].lower_source = tree_[id].asm_up;
      }
      for (int side = 0; side < 2; ++side) {
        TreeNode child;
        child.node = side == 0 ? down : up;
        child.parent = id;
        child.node.exact_dual_bound = res.objective_value;
        const int cid = static_cast<int>(tree_.size());
        tree_[id].children[side] = cid;
        tree_.push_back(std::move(child));
        open.push({res.objective_value, seq++, cid});
      }
    }

    result_.stats.time_total = seconds_since(start_);
    if (limit_hit) {
      result_.status = SolveStatus::time_limit;
      // Best bound over the unexplored nodes; the root has none (-inf).
      std::optional<Rational> lb = incumbent_value_;
      bool unbounded_below = false;
      for (; !open.empty(); open.pop()) {
        const auto& b = tree_[open.top().id].node.exact_dual_bound;
        if (!b) unbounded_below = true;
        else if (!lb || *b < *lb) lb = *b;
      }
      if (unbounded_below) lb.reset();
      result_.dual_bound = lb;
      result_.incumbent = incumbent_;
      result_.objective = incumbent_value_;
      return std::move(result_);
    }
    if (incumbent_) {
      result_.status = SolveStatus::optimal;
      result_.incumbent = incumbent_;
      result_.objective = incumbent_value_;
      result_.dual_bound = incumbent_value_;
      if (cb_) cb_->set_optimal(*incumbent_value_, *incumbent_);
    } else {
      result_.status = SolveStatus::infeasible;
      if (cb_) cb_->set_infeasible();
    }
    if (cb_) result_.certificate = cb_->take();
    return std::move(result_);
  }

 private:
  bool limit_reached() const {
    if (cfg_.node_limit > 0 && result_.node_count >= cfg_.node_limit) return true;
    if (cfg_.time_limit > 0 && seconds_since(start_) >= cfg_.time_limit) return true;
    return false;
  }

  LpResult<Rational> exact(const LpRelaxation& lp) {
    const auto t = Clock::now();
    auto res = solve_exact(lp);
    result_.stats.time_exact_lp += seconds_since(t);
    if (res.status == LpStatus::unbounded) throw std::runtime_error("LP relaxation is unbounded");
    if (res.status == LpStatus::iteration_limit) throw std::runtime_error("exact LP hit its iteration limit");
    return res;
  }

  bool integral(const std::vector<Rational>& x) const {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (is_int_[j] && !is_integer(x[j])) return false;
    return true;
  }

  LpRelaxation node_lp(const Node& n) const {
    LpRelaxation lp = lp_;
    for (std::size_t j = 0; j < n.bounds.size(); ++j) {
      lp.lower[j] = n.bounds[j].lower;
      lp.upper[j] = n.bounds[j].upper;
    }
    return lp;
  }

  LpResult<Rational> separate(LpResult<Rational> res) {
    SeparatorConfig sc = cfg_.separator;
    sc.certificate_mode = cb_.has_value();
    MirProofContext ctx;
    if (cb_) {
      for (int j = 0; j < static_cast<int>(p_.num_vars()); ++j) {
        ctx.lower.push_back(cb_->lower_bound_constraint(j));
        ctx.upper.push_back(cb_->upper_bound_constraint(j));
      }
    }
    for (int round = 0; round < cfg_.rounds; ++round) {
      if (limit_reached()) break;
      auto t = Clock::now();
      const auto fres = solve_float(lp_);
      result_.stats.time_float_lp += seconds_since(t);
      if (fres.status != LpStatus::optimal) break;
      t = Clock::now();
      auto cuts = separate_gmi(lp_, is_int_, fres, sc);
      result_.stats.time_separation += seconds_since(t);
      if (cuts.empty()) break;
      ++result_.stats.separation_rounds;
      if (cb_) ctx.lp_rows = row_refs_;
      for (const auto& c : cuts) {
        lp_.rows.push_back({c.coefficients, c.rhs});
        if (cb_) {
          const auto idx = emit_mir_proof(c, *cb_, ctx, "cut" + std::to_string(result_.cuts_added));
          row_refs_.push_back({idx.final_cut, 1});
        }
        ++result_.cuts_added;
      }
      res = exact(lp_);
      if (res.status != LpStatus::optimal || integral(res.primal)) break;
    }
    return res;
  }

  int leaf_claim(int id, const LpResult<Rational>& res) {
    if (!cb_) return -1;
    const Node& n = tree_[id].node;
    std::vector<vipr::Term> terms;
    for (std::size_t k = 0; k < res.dual.size(); ++k)
      if (sgn(res.dual[k]) != 0) terms.push_back({row_refs_[k].index, res.dual[k] * row_refs_[k].sign});
    for (std::size_t j = 0; j < res.reduced_cost.size(); ++j) {
      const int s = sgn(res.reduced_cost[j]);
      if (s == 0) continue;
      const int src = s > 0 ? n.bounds[j].lower_source : n.bounds[j].upper_source;
      if (src < 0) throw std::logic_error("LP bound uses a bound without a certificate constraint");
      terms.push_back({src, res.reduced_cost[j]});
    }
    const int idx = cb_->add_lin("n" + std::to_string(id), terms);
    if (res.status == LpStatus::infeasible && !vipr::is_falsehood(cb_->at(idx)))
      throw std::logic_error("Farkas multipliers do not yield a contradiction");
    return idx;
  }

  void close(int id, int claim) {
    tree_[id].claim = claim;
    const int parent = tree_[id].parent;
    if (parent < 0) return;
    if (++tree_[parent].closed_children < 2) return;
    int merged = -1;
    if (cb_) {
      const int c0 = tree_[tree_[parent].children[0]].claim;
      const int c1 = tree_[tree_[parent].children[1]].claim;
      const vipr::Constraint& s0 = cb_->at(c0);
      const vipr::Constraint& s1 = cb_->at(c1);
      vipr::Constraint target;
      if (vipr::is_falsehood(s0) && vipr::is_falsehood(s1)) target = s0;
      else if (vipr::is_falsehood(s0)) target = s1;
      else if (vipr::is_falsehood(s1)) target = s0;
      else target = {"", Sense::ge, s0.rhs < s1.rhs ? s0.rhs : s1.rhs, p_.objective};
      merged = cb_->add_uns("n" + std::to_string(parent), target, c0, tree_[parent].asm_down, c1,
                            tree_[parent].asm_up);
    }
    close(parent, merged);
  }

  const Problem& p_;
  SolverConfig cfg_;
  LpRelaxation lp_;
  std::vector<bool> is_int_;
  std::optional<CertificateBuilder> cb_;
  std::vector<CertRef> row_refs_;
  std::vector<TreeNode> tree_;
  std::optional<std::vector<Rational>> incumbent_;
  std::optional<Rational> incumbent_value_;
  SolveResult result_;
  Clock::time_point start_;
};

}  // namespace

SolveResult solve(const Problem& p, const SolverConfig& cfg) { return Solver(p, cfg).run(); }

}  // namespace exactcuts
