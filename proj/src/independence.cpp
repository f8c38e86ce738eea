#include "artifact/independence.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>

namespace g13 {

namespace {

std::string pair_label(const std::string& a, const std::string& b) {
  auto rank = [](const std::string& s) {
    if (s.size() == 1 && std::isdigit(static_cast<unsigned char>(s[0]))) return std::make_pair(0, s);
    return std::make_pair(1, s == "inf" ? std::string("0") : s);
  };
  auto [x, y] = rank(a) <= rank(b) ? std::make_pair(a, b) : std::make_pair(b, a);
  if (rank(x).first == 0 && rank(y).first == 0) return x + y;
  return x + "+" + y;
}

Candidate make_candidate(const std::map<std::string, PLFunction>& comps, const std::string& a, const std::string& b) {
  return Candidate{pair_label(a, b), a, b, comps.at(a) + comps.at(b)};
}

std::vector<Candidate> standard_pool(const std::map<std::string, PLFunction>& comps) {
  std::vector<Candidate> pool;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) pool.push_back(make_candidate(comps, std::to_string(i), std::to_string(j)));
  return pool;
}

bool contains(const Candidate& c, const std::string& name) { return c.left == name || c.right == name; }

}  // namespace

// ---------------------------------------------------------------- blocks

std::array<std::vector<int>, 3> BlockPlan::blocks() const {
  std::array<std::vector<int>, 3> b;
  for (int k = first_loop; k <= 13; ++k) b[block_of(k)].push_back(k);
  return b;
}

nlohmann::json BlockPlan::to_json() const { return {{"z1", z1}, {"z2", z2}, {"rule", rule}}; }

BlockPlan choose_blocks(const LoopProfile& profile, const SlopeTable& st) {
  BlockPlan p;
  p.first_loop = st.first_loop();
  int k0 = p.first_loop;
  auto right = [&] {
    int k = -1;
    for (int j = k0; j <= 13 && k < 0; ++j)
      if (st.out(j)[5] == 6) k = j;
    if (k < 0) throw std::invalid_argument("choose_blocks: no loop with s'_k[5] = 6");
    p.z1 = k >= 7 ? 6 : 7;
    p.z2 = std::max(k - 1, 7);
    p.rule = "right-ramified";
  };
  auto left = [&] {
    int k = -1;
    for (int j = k0; j <= 14; ++j)
      if (st.in(j)[0] == -3) k = j;
    if (k < 0) throw std::invalid_argument("choose_blocks: no loop with s_k[0] = -3");
    p.z1 = std::min(k, 6);
    p.z2 = k >= 8 ? 6 : 7;
    p.rule = "left-ramified";
  };
  int l = profile.where;
  switch (profile.special) {
    case ItemKind::Lingering:
      p.z1 = std::min(6, l);
      p.z2 = std::max(7, l);
      p.rule = "lingering";
      break;
    case ItemKind::Switching:
      p.z1 = l < 6 ? l : l == 6 ? 5 : 6;
      p.z2 = l < 6 ? 7 : l;
      p.rule = "switching";
      break;
    case ItemKind::Ordinary:
      if (profile.ramified_right) right();
      else if (profile.ramified_left) left();
      else throw std::invalid_argument("choose_blocks: no item of positive multiplicity");
      break;
    case ItemKind::DecreasingBridge:
      if (l >= 8 && st.out(l - 1)[5] == 6) right();
      else if (l <= 7 && st.in(l)[0] == -3) left();
      else {
        p.z1 = std::min(l - 1, 6);
        p.z2 = l - 1;
        p.rule = "decreasing-bridge";
      }
      break;
    case ItemKind::DecreasingLoop:
      if (l >= 8 && st.in(l)[5] == 6) right();
      else if (l <= 7 && st.out(l)[0] == -3) left();
      else {
        p.z1 = l < 6 ? l : l == 6 ? 5 : 6;
        p.z2 = l > 8 ? l - 1 : l == 8 ? 8 : 7;
        p.rule = "decreasing-loop";
      }
      break;
  }
  if (p.z1 < k0 || p.z1 > p.z2 || p.z2 > 13)
    throw std::invalid_argument("choose_blocks: blocks (" + std::to_string(p.z1) + ", " + std::to_string(p.z2) +
                                ") do not fit loops " + std::to_string(k0) + "..13");
  return p;
}

// ---------------------------------------------------------------- permissibility

const char* to_string(PermKind p) {
  switch (p) {
    case PermKind::NotPermissible: return "not";
    case PermKind::Ordinary: return "ordinary";
    case PermKind::New: return "new";
    case PermKind::Departing: return "departing";
    default: return "new-departing";
  }
}

int slope_in(const PLFunction& psi, int k) { return psi.last_slope({EdgeKind::Bridge, k}); }
int slope_out(const PLFunction& psi, int k) { return psi.first_slope({EdgeKind::Bridge, k + 1}); }

PermKind permissible(const PLFunction& psi, int k, const BlockPlan& plan) {
  int sigma = plan.sigma(k), a = slope_in(psi, k), b = slope_out(psi, k);
  if (a > sigma || b < sigma) return PermKind::NotPermissible;
  bool fresh = a <= sigma - 1, dep = b >= sigma + 1;
  if (fresh && dep) return PermKind::NewDeparting;
  if (dep) return PermKind::Departing;
  return fresh ? PermKind::New : PermKind::Ordinary;
}

bool permissible_on_block(const PLFunction& psi, int block, const BlockPlan& plan) {
  auto blocks = plan.blocks();
  if (!blocks[block].empty()) {
    for (int k : blocks[block])
      if (permissible(psi, k, plan) != PermKind::NotPermissible) return true;
    return false;
  }
  int z = block == 1 ? plan.z1 : plan.z2;
  return block > 0 && slope_in(psi, z + 1) == 4 - block;
}

// ---------------------------------------------------------------- basis

nlohmann::json BasisSelection::to_json() const {
  nlohmann::json j{{"rule", rule}, {"omitted", omitted}, {"added", added}, {"omission_candidates", omission_candidates}};
  j["retained"] = nlohmann::json::array();
  for (auto& c : retained) j["retained"].push_back(c.label);
  j["block_counts"] = block_counts;
  j["block_loops"] = block_loops;
  j["conditions"] = conditions;
  return j;
}

BasisSelection select_basis(const LoopProfile& profile, const SlopeTable& st, const BlockPlan& plan,
                            const std::map<std::string, PLFunction>& components,
                            const std::optional<std::string>& omit_override) {
  BasisSelection sel;
  std::vector<Candidate> pool = standard_pool(components);
  auto by_block = [&](int block, auto&& keep) {
    std::vector<std::string> out;
    for (auto& c : pool)
      if (keep(c) && permissible_on_block(c.f, block, plan)) out.push_back(c.label);
    return out;
  };
  auto any = [](const Candidate&) { return true; };
  std::string rule = plan.rule;
  int l = profile.where, h = profile.h;
  auto hi_label = [&](int i) { return pair_label(std::to_string(h), std::to_string(i)); };
  // Omission by the existence dichotomy: a unique i with s[h] + s[i] = target,
  // or 2s[h] = target + 1 (then φ_hh), never both.
  auto dichotomy = [&](const Slopes& s, int target, bool allow_hh, const std::string& what) {
    std::vector<int> is;
    for (int i = 0; i < 6; ++i)
      if (s[h] + s[i] == target) is.push_back(i);
    bool hh = allow_hh && 2 * s[h] == target + 1;
    if (is.size() == 1 && !hh) return std::vector<std::string>{hi_label(is[0])};
    if (is.empty() && hh) return std::vector<std::string>{hi_label(h)};
    throw SelectionError("select_basis: " + what + " dichotomy fails (" + std::to_string(is.size()) +
                         " indices, hh " + (hh ? "yes" : "no") + ")");
  };

  if (rule == "lingering") {
    sel.rule = l <= 7 ? "omit a function permissible on the second block" : "omit a function permissible on the third block";
    sel.omission_candidates = by_block(l <= 7 ? 1 : 2, any);
  } else if (rule == "right-ramified" || rule == "left-ramified") {
    sel.rule = plan.z1 == plan.z2 ? "omit a function with slope 3 on the bridge after the first block"
                                  : "omit a function permissible on the second block";
    sel.omission_candidates = by_block(1, any);
  } else if (rule == "decreasing-bridge") {
    const Slopes& s = st.out(l - 1);
    int sigma = plan.sigma(l - 1);
    if (l == 5 || l == 6) {
      sel.rule = "omit phi_hi with s'[h] + s'[i] = s(theta) - 1 on the loop before the bridge";
      sel.omission_candidates = dichotomy(s, sigma - 1, false, "decreasing bridge");
    } else {
      sel.rule = "omit phi_hi with s'[h] + s'[i] = s(theta), or phi_hh, on the loop before the bridge";
      sel.omission_candidates = dichotomy(s, sigma, true, "decreasing bridge");
    }
  } else if (rule == "decreasing-loop") {
    const Slopes& s = st.in(l);
    int sigma = (l < 6 || l == 7 || l == 8) ? plan.sigma(l) : plan.sigma(l - 1);
    sel.rule = "omit phi_hi with s[h] + s[i] = s(theta), or phi_hh, at the decreasing loop";
    sel.omission_candidates = dichotomy(s, sigma, true, "decreasing loop");
  } else if (rule == "switching") {
    int block = l == 6 ? 0 : l <= 7 ? 1 : 2;
    sel.rule = std::string("omit a sum avoiding h, h+1 permissible on the ") +
               (block == 0 ? "first" : block == 1 ? "second" : "third") + " block";
    std::string a = std::to_string(h), b = std::to_string(h + 1);
    sel.omission_candidates =
        by_block(block, [&](const Candidate& c) { return !contains(c, a) && !contains(c, b); });
  } else {
    throw SelectionError(std::string("select_basis: unknown block rule ") + rule);
  }
  if (sel.omission_candidates.empty()) throw SelectionError("select_basis: no function to omit under rule: " + sel.rule);
  std::string omit = sel.omission_candidates.front();
  if (omit_override) {
    if (std::find(sel.omission_candidates.begin(), sel.omission_candidates.end(), *omit_override) ==
        sel.omission_candidates.end())
      throw SelectionError("select_basis: override " + *omit_override + " is not an allowed omission");
    omit = *omit_override;
  }
  sel.omitted.push_back(omit);
  for (auto& c : pool)
    if (c.label != omit) sel.retained.push_back(c);

  if (rule == "switching") {
    // Swap φ⁰_h + φ for φ^∞_h + φ when s′_ℓ[h+1] + s′_ℓ(φ) = s_ℓ(θ) + 1.
    const Slopes& s = st.out(l);
    for (int i = 0; i < 6; ++i) {
      if (s[h + 1] + s[i] != plan.sigma(l) + 1) continue;
      std::string gone = pair_label(std::to_string(h), std::to_string(i));
      auto it = std::find_if(sel.retained.begin(), sel.retained.end(), [&](auto& c) { return c.label == gone; });
      if (it == sel.retained.end()) continue;
      Candidate add = make_candidate(components, "inf", std::to_string(i));
      sel.omitted.push_back(gone);
      sel.added.push_back(add.label);
      *it = add;
      break;
    }
  }

  // Checklist.
  auto blocks = plan.blocks();
  bool cond_i = true, cond_ii = true, cond_iii = true, counts = true;
  for (int k = plan.first_loop; k <= 13; ++k) {
    std::vector<const Candidate*> perm;
    for (auto& c : sel.retained)
      if (permissible(c.f, k, plan) != PermKind::NotPermissible) perm.push_back(&c);
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a]->f.same_on_loop(perm[b]->f, k)) cond_i = false;
  }
  for (int b = 0; b < 3; ++b) {
    sel.block_loops[b] = static_cast<int>(blocks[b].size());
    sel.block_counts[b] = 0;
    for (auto& c : sel.retained)
      if (permissible_on_block(c.f, b, plan)) ++sel.block_counts[b];
    if (sel.block_counts[b] > sel.block_loops[b] + 1) cond_ii = false;
    if (sel.block_counts[b] != sel.block_loops[b] + 1) counts = false;
  }
  for (auto& c : sel.retained) {
    int n = 0;
    for (int b = 0; b < 3; ++b) n += permissible_on_block(c.f, b, plan);
    if (n > 1) cond_iii = false;
  }
  bool cond_iv = true, cond_v = true, cond_vi = true;
  if (profile.special == ItemKind::Lingering) cond_iv = l == 13 || plan.block_of(l) != plan.block_of(l + 1);
  if (profile.special == ItemKind::DecreasingLoop)
    for (auto& c : sel.retained)
      if (contains(c, std::to_string(h)) && permissible(c.f, l, plan) != PermKind::NotPermissible) cond_v = false;
  if (profile.special == ItemKind::DecreasingBridge && l - 1 != plan.z1 && l - 1 != plan.z2 && l - 1 >= plan.first_loop)
    for (auto& c : sel.retained)
      if (contains(c, std::to_string(h)) && permissible(c.f, l - 1, plan) != PermKind::NotPermissible) cond_vi = false;
  sel.conditions = {{"i", cond_i}, {"ii", cond_ii}, {"iii", cond_iii}, {"iv", cond_iv},
                    {"v", cond_v}, {"vi", cond_vi}, {"counts", counts}};
  if (!counts)
    throw SelectionError("select_basis: per-block permissible counts (" + std::to_string(sel.block_counts[0]) + ", " +
                         std::to_string(sel.block_counts[1]) + ", " + std::to_string(sel.block_counts[2]) +
                         ") differ from loops + 1 (" + std::to_string(sel.block_loops[0] + 1) + ", " +
                         std::to_string(sel.block_loops[1] + 1) + ", " + std::to_string(sel.block_loops[2] + 1) + ")");
  return sel;
}

// ---------------------------------------------------------------- builder

namespace {

class Builder {
 public:
  Builder(const BasisSelection& basis, const BlockPlan& plan, const LoopProfile& profile, const ChainGraph& graph)
      : fs_(basis.retained), plan_(plan), graph_(graph), coef_(fs_.size()) {
    if (profile.special == ItemKind::Lingering || profile.special == ItemKind::Switching) special_loop_ = profile.where;
  }

  BuildResult run() {
    first_bridge();
    auto blocks = plan_.blocks();
    for (int b = 0; b < 3; ++b) {
      const auto& blk = blocks[b];
      if (blk.empty()) {
        if (b == 1) empty_middle_block();
        continue;
      }
      if (b > 0) start_block(blk.front());
      for (int k : blk) loop_step(k);
      exit_block(blk.back());
    }
    last_bridge();
    BuildResult r;
    for (std::size_t i = 0; i < fs_.size(); ++i) {
      if (!coef_[i]) throw BuilderError("builder: " + fs_[i].label + " never received a coefficient");
      r.coefficients.push_back(*coef_[i]);
    }
    r.log = std::move(log_);
    r.placed = std::move(placed_);
    return r;
  }

 private:
  std::size_t edge(EdgeKind kind, int k) const { return graph_.edge_index({kind, k}); }
  Rational raw(std::size_t i, std::size_t e, const Rational& x) const { return fs_[i].f.value_at(e, x); }
  Rational val(std::size_t i, std::size_t e, const Rational& x) const { return raw(i, e, x) + *coef_[i]; }
  bool assigned(std::size_t i) const { return placed_.count(fs_[i].label) > 0; }

  Rational theta(std::size_t e, const Rational& x) const {
    std::optional<Rational> m;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (coef_[i]) {
        Rational v = val(i, e, x);
        if (!m || v < *m) m = v;
      }
    if (!m) throw BuilderError("builder: no function initialized yet");
    return *m;
  }

  void set_coef(std::size_t i, const Rational& c, bool upward_only) {
    if (upward_only && coef_[i] && c < *coef_[i])
      throw BuilderError("builder: coefficient of " + fs_[i].label + " would decrease");
    coef_[i] = c;
  }

  void place(std::size_t i, const std::string& where, const std::string& how, int count = -1) {
    placed_[fs_[i].label] = where;
    log_.push_back({where, fs_[i].label, *coef_[i], how, count});
  }

  std::vector<std::size_t> unassigned_permissible(int k) const {
    std::vector<std::size_t> u;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (!assigned(i) && permissible(fs_[i].f, k, plan_) != PermKind::NotPermissible) u.push_back(i);
    return u;
  }

  void first_bridge() {
    int k0 = plan_.first_loop;
    std::size_t e = edge(EdgeKind::Bridge, k0);
    const Rational& n = graph_.bridge(k0);
    std::vector<std::size_t> high;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (slope_in(fs_[i].f, k0) > 4) high.push_back(i);
    std::stable_sort(high.begin(), high.end(),
                     [&](auto a, auto b) { return slope_in(fs_[a].f, k0) > slope_in(fs_[b].f, k0); });
    Rational t(static_cast<long>(high.size()));
    std::optional<std::size_t> prev;
    for (std::size_t j = 0; j < high.size(); ++j) {
      std::size_t i = high[j];
      if (!prev) coef_[i] = Rational(0);
      else {
        Rational x = n * Rational(static_cast<long>(j)) / (t + 1);
        coef_[i] = val(*prev, e, x) - raw(i, e, x);
      }
      prev = i;
      place(i, "bridge:" + std::to_string(k0), "first-bridge");
    }
    Rational x = n * t / (t + 1);
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (slope_in(fs_[i].f, k0) == 4) coef_[i] = (prev ? val(*prev, e, x) : Rational(0)) - raw(i, e, x);
  }

  void empty_middle_block() {
    int k = plan_.z1 + 1;
    std::size_t e = edge(EdgeKind::Bridge, k);
    Rational x = graph_.bridge(k) * Rational(3, 8);
    std::vector<std::size_t> u;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (!assigned(i) && permissible_on_block(fs_[i].f, 1, plan_)) u.push_back(i);
    if (u.size() != 1)
      throw BuilderError("builder: empty second block has " + std::to_string(u.size()) + " permissible functions");
    set_coef(u[0], theta(e, x) - raw(u[0], e, x), true);
    place(u[0], "bridge:" + std::to_string(k), "empty-block");
  }

  void start_block(int k) {
    std::size_t e = edge(EdgeKind::Bridge, k);
    Rational x = graph_.bridge(k) / 2;
    Rational th = theta(e, x);
    for (std::size_t i : unassigned_permissible(k)) set_coef(i, th - raw(i, e, x), true);
  }

  void loop_step(int k) {
    auto u = unassigned_permissible(k);
    if (u.size() < 2)
      throw BuilderError("builder: loop " + std::to_string(k) + " has " + std::to_string(u.size()) +
                         " unassigned permissible functions");
    std::size_t top = edge(EdgeKind::Top, k);
    const Rational& ell = graph_.top(k);
    std::optional<Rational> m;
    for (std::size_t i : u)
      if (coef_[i]) {
        Rational v = val(i, top, ell);
        if (!m || v > *m) m = v;
      }
    if (!m) throw BuilderError("builder: no initialized function on loop " + std::to_string(k));
    for (std::size_t i : u) set_coef(i, *m - raw(i, top, ell), true);
    std::vector<std::size_t> dep;
    for (std::size_t i : u)
      if (is_departing(permissible(fs_[i].f, k, plan_))) dep.push_back(i);
    std::string where = "loop:" + std::to_string(k);
    int count = static_cast<int>(u.size());
    if (dep.size() > 1) throw BuilderError("builder: two departing functions on loop " + std::to_string(k));
    if (dep.size() == 1) {
      std::size_t d = dep[0];
      std::size_t br = edge(EdgeKind::Bridge, k + 1);
      Rational x = graph_.bottom(k) / 8;
      for (std::size_t i : u)
        if (i != d) set_coef(i, *coef_[i] + val(d, br, x) - val(i, br, x), true);
      place(d, where, "departing", count);
      return;
    }
    if (u.size() > 3) throw BuilderError("builder: more than three non-departing functions on loop " + std::to_string(k));
    auto shapes = unique_on_loop(u, k);
    if (shapes.empty()) throw BuilderError("builder: no function is uniquely minimal on loop " + std::to_string(k));
    auto [depth, d] = shapes.front();
    Rational raise = k == special_loop_ ? depth / 2 : graph_.bottom(k) / 3;
    set_coef(d, *coef_[d] + raise, true);
    place(d, where, "three-shape", count);
  }

  // (depth, index) for each function uniquely minimal somewhere on γ_k, by
  // decreasing depth, then label.
  std::vector<std::pair<Rational, std::size_t>> unique_on_loop(const std::vector<std::size_t>& u, int k) const {
    std::map<std::size_t, Rational> best;
    for (EdgeKind kind : {EdgeKind::Top, EdgeKind::Bottom}) {
      std::size_t e = edge(kind, k);
      const Rational& len = graph_.length({kind, k});
      std::vector<Rational> xs{Rational(0), len};
      for (std::size_t i : u)
        for (auto& s : fs_[i].f.segments(e)) xs.push_back(s.start);
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      std::vector<Rational> pts = xs;
      for (std::size_t j = 0; j + 1 < xs.size(); ++j)
        for (std::size_t a = 0; a < u.size(); ++a)
          for (std::size_t b = a + 1; b < u.size(); ++b) {
            Rational da = val(u[a], e, xs[j]) - val(u[b], e, xs[j]);
            Rational db = val(u[a], e, xs[j + 1]) - val(u[b], e, xs[j + 1]);
            if (da * db < 0) pts.push_back(xs[j] + (xs[j + 1] - xs[j]) * da / (da - db));
          }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      std::vector<Rational> probe = pts;
      for (std::size_t j = 0; j + 1 < pts.size(); ++j) probe.push_back((pts[j] + pts[j + 1]) / 2);
      for (auto& x : probe) {
        std::vector<std::pair<Rational, std::size_t>> vals;
        for (std::size_t i : u) vals.emplace_back(val(i, e, x), i);
        std::sort(vals.begin(), vals.end(), [&](auto& p, auto& q) {
          return p.first != q.first ? p.first < q.first : fs_[p.second].label < fs_[q.second].label;
        });
        if (vals[0].first < vals[1].first) {
          Rational depth = vals[1].first - vals[0].first;
          auto it = best.find(vals[0].second);
          if (it == best.end() || it->second < depth) best[vals[0].second] = depth;
        }
      }
    }
    std::vector<std::pair<Rational, std::size_t>> out;
    for (auto& [i, d] : best) out.emplace_back(d, i);
    std::sort(out.begin(), out.end(), [&](auto& p, auto& q) {
      return p.first != q.first ? p.first > q.first : fs_[p.second].label < fs_[q.second].label;
    });
    return out;
  }

  void exit_block(int k) {
    auto u = unassigned_permissible(k);
    if (u.size() != 1)
      throw BuilderError("builder: " + std::to_string(u.size()) + " functions left after the block ending at loop " +
                         std::to_string(k));
    place(u[0], "bridge:" + std::to_string(k + 1), "block-exit");
  }

  void last_bridge() {
    std::size_t e = edge(EdgeKind::Bridge, 14);
    const Rational& n = graph_.bridge(14);
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (!assigned(i)) rest.push_back(i);
    std::stable_sort(rest.begin(), rest.end(),
                     [&](auto a, auto b) { return slope_in(fs_[a].f, 14) > slope_in(fs_[b].f, 14); });
    Rational cnt(static_cast<long>(rest.size()));
    for (std::size_t j = 0; j < rest.size(); ++j) {
      std::size_t i = rest[j];
      Rational x = n / 2 + n / 2 * Rational(static_cast<long>(j)) / cnt;
      set_coef(i, theta(e, x) - raw(i, e, x), false);
      place(i, "bridge:14", "last-bridge");
    }
  }

  const std::vector<Candidate>& fs_;
  const BlockPlan& plan_;
  const ChainGraph& graph_;
  std::vector<std::optional<Rational>> coef_;
  std::map<std::string, std::string> placed_;
  std::vector<Assignment> log_;
  int special_loop_ = -1;
};

}  // namespace

BuildResult run_builder(const BasisSelection& basis, const BlockPlan& plan, const LoopProfile& profile,
                        const ChainGraph& graph) {
  return Builder(basis, plan, profile, graph).run();
}

// ---------------------------------------------------------------- best approximation

std::vector<Rational> approximation_shifts(const PLFunction& theta, const std::vector<PLFunction>& T) {
  std::vector<Rational> c;
  for (auto& phi : T) c.push_back((phi - theta).minimum());
  return c;
}

PLFunction best_approximation(const PLFunction& theta, const std::vector<PLFunction>& T) {
  if (T.empty()) throw std::invalid_argument("best_approximation: empty set");
  auto c = approximation_shifts(theta, T);
  for (auto& x : c) x = -x;
  return min_combination(T, c);
}

// ---------------------------------------------------------------- end to end

CaseInput case_from_tableau(const Tableau& t, const Integer& scale_base) {
  return CaseInput{slopes_from_tableau(t), std::nullopt, scale_base, std::nullopt, 2};
}

nlohmann::json SwitchingReport::to_json() const {
  nlohmann::json j{{"T", t_labels},           {"construction", construction},
                   {"crossing_a", g13::to_json(crossing_a)},
                   {"crossing_b", g13::to_json(crossing_b)},
                   {"theta_matches", theta_matches},
                   {"certificate", certificate.to_json(t_labels)}};
  if (!rule_outcome.empty()) j["selection_rule_outcome"] = rule_outcome;
  return j;
}

nlohmann::json CaseResult::to_json() const {
  nlohmann::json j{{"ok", ok}, {"scale_base", scale_base.get_str()}, {"escalations", escalations}};
  if (!error.empty()) j["error"] = error;
  if (profile) j["profile"] = profile->to_json();
  if (plan) j["blocks"] = plan->to_json();
  if (selection) j["basis"] = selection->to_json();
  if (build) {
    j["assignments"] = nlohmann::json::array();
    for (auto& a : build->log) {
      nlohmann::json e{{"place", a.place}, {"function", a.label}, {"coefficient", to_string(a.coefficient)}, {"how", a.how}};
      if (a.unassigned_permissible >= 0) e["unassigned_permissible"] = a.unassigned_permissible;
      j["assignments"].push_back(e);
    }
  }
  if (certificate && selection) {
    std::vector<std::string> labels;
    for (auto& c : selection->retained) labels.push_back(c.label);
    j["certificate"] = certificate->to_json(labels);
    j["one_more_lemma"] = one_more_lemma;
  }
  if (switching) j["switching"] = switching->to_json();
  return j;
}

namespace {

struct StageError : std::runtime_error {
  StageError(const std::string& what, bool retry) : std::runtime_error(what), escalate(retry) {}
  bool escalate;
};

// f + b does not reach θ anywhere to the right of v_{k+1}.
bool stays_above_right_of(const PLFunction& diff, int k) {
  const ChainGraph& g = *diff.graph();
  if (k + 1 > 13) return true;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    EdgeId id = g.edges()[e];
    bool after = id.kind == EdgeKind::Bridge ? id.k >= k + 2 : id.k >= k + 1;
    if (!after) continue;
    bool at_v = id.kind != EdgeKind::Bridge && id.k == k + 1;
    for (auto& s : diff.segments(e)) {
      if (at_v && s.start == 0) continue;
      if (diff.value_at(e, s.start) <= 0) return false;
    }
    if (diff.value_at(e, g.length(id)) <= 0) return false;
  }
  return true;
}

// Region where f − θ attains its minimum meets the part left of γ_ℓ.
bool touches_left_of(const PLFunction& f, const PLFunction& theta, int loop) {
  PLFunction d = f - theta;
  Rational c = d.minimum();
  const ChainGraph& g = *d.graph();
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    EdgeId id = g.edges()[e];
    bool left = id.kind == EdgeKind::Bridge ? id.k <= loop : id.k < loop;
    if (!left) continue;
    for (auto& s : d.segments(e))
      if (d.value_at(e, s.start) == c) return true;
    if (d.value_at(e, g.length(id)) == c) return true;
  }
  return false;
}

// One construction of T with φ_A and φ^∞_h + c_A crossing at xa (right of
// γ_ℓ), and φ_B crossing at xb (left of γ_ℓ).
SwitchingReport switching_attempt(const CaseResult& r, const std::map<std::string, PLFunction>& comps,
                                  const GraphPoint& xa, const GraphPoint& xb) {
  const LoopProfile& prof = *r.profile;
  int l = prof.where, h = prof.h;
  const ChainGraph& g = *r.graph;
  const PLFunction& theta = *r.theta;
  std::string sh = std::to_string(h), sh1 = std::to_string(h + 1);
  const PLFunction &p0 = comps.at(sh), &p1 = comps.at(sh1), &inf = comps.at("inf");
  if (!p0.same_on_loop(p1, l)) throw StageError("switching: phi_h and phi_h+1 differ on the switching loop", false);
  Rational cA = p0.value_at(xa) - inf.value_at(xa);
  Rational cB = p1.value_at(xb) - inf.value_at(xb);
  GraphPoint vl = vertex_v(g, l);
  Rational cC = p0.value_at(vl) - p1.value_at(vl);
  std::map<std::string, PLFunction> s;
  for (int i = 0; i < 6; ++i)
    if (i != h && i != h + 1) s.emplace(std::to_string(i), comps.at(std::to_string(i)));
  s.emplace("A", min_combination({p0, inf}, {Rational(0), cA}));
  s.emplace("B", min_combination({p1, inf}, {Rational(0), cB}));
  s.emplace("C", min_combination({p0, p1}, {Rational(0), cC}));

  const auto& retained = r.selection->retained;
  std::map<std::string, GraphPoint> witness;
  for (auto& e : r.certificate->entries) witness.emplace(retained[e.index].label, e.witness);
  auto equal_at_region = [&](const PLFunction& f, const std::string& label) {
    auto it = witness.find(label);
    if (it == witness.end()) return false;
    Rational c = (f - theta).minimum();
    return f.value_at(it->second) - c == theta.value_at(it->second);
  };

  using Pair = std::pair<std::string, std::string>;
  auto evaluate = [&](const std::vector<Pair>& pairs, SwitchingReport& rep) {
    std::vector<PLFunction> T;
    rep.t_labels.clear();
    for (auto& [a, b] : pairs) {
      rep.t_labels.push_back(pair_label(a, b));
      T.push_back(s.at(a) + s.at(b));
    }
    rep.theta_matches = best_approximation(theta, T).same_as(theta);
    auto c = approximation_shifts(theta, T);
    for (auto& x : c) x = -x;
    rep.certificate = certify_independence(T, c);
    return rep.theta_matches && rep.certificate.ok;
  };

  std::vector<Pair> fixed;
  for (auto& c : retained)
    if (!contains(c, sh) && !contains(c, sh1) && !contains(c, "inf")) fixed.emplace_back(c.left, c.right);

  SwitchingReport rep;
  rep.crossing_a = xa;
  rep.crossing_b = xb;
  // Selection rules for T_j and T′.
  std::vector<Pair> tpairs = fixed;
  std::string missed;
  for (int j = 0; j < 6 && missed.empty(); ++j) {
    if (j == h || j == h + 1) continue;
    std::string sj = std::to_string(j);
    PLFunction cj = s.at("C") + s.at(sj);
    if (equal_at_region(cj, pair_label(sh, sj))) tpairs.insert(tpairs.end(), {{"B", sj}, {"C", sj}});
    else if (equal_at_region(cj, pair_label(sh1, sj))) tpairs.insert(tpairs.end(), {{"A", sj}, {"C", sj}});
    else missed = "best approximation by C + phi_" + sj + " meets neither region";
  }
  if (missed.empty()) {
    tpairs.emplace_back("C", "C");
    if (touches_left_of(s.at("C") + s.at("C"), theta, l)) {
      tpairs.emplace_back("A", "C");
      tpairs.emplace_back("A", touches_left_of(s.at("A") + s.at("C"), theta, l) ? "A" : "B");
    } else {
      tpairs.emplace_back("B", "C");
      tpairs.emplace_back(touches_left_of(s.at("B") + s.at("C"), theta, l) ? "A" : "B", "B");
    }
    rep.construction = "selection-rule";
    if (evaluate(tpairs, rep)) return rep;
    rep.rule_outcome = rep.theta_matches ? "selection-rule set is not independent" : "selection-rule set does not reproduce theta";
  } else {
    rep.rule_outcome = missed;
  }

  // Region matching: targets are the B″ functions involving h, h+1 or ∞.
  std::vector<std::string> targets;
  for (auto& c : retained)
    if (contains(c, sh) || contains(c, sh1) || contains(c, "inf")) targets.push_back(c.label);
  std::vector<Pair> cands;
  for (int j = 0; j < 6; ++j)
    if (j != h && j != h + 1)
      for (const char* x : {"A", "B", "C"}) cands.emplace_back(x, std::to_string(j));
  for (auto [a, b] : std::vector<Pair>{{"A", "A"}, {"A", "B"}, {"A", "C"}, {"B", "B"}, {"B", "C"}, {"C", "C"}})
    cands.emplace_back(a, b);
  std::vector<std::vector<std::size_t>> adj(targets.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    PLFunction f = s.at(cands[c].first) + s.at(cands[c].second);
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (equal_at_region(f, targets[t])) adj[t].push_back(c);
  }
  std::vector<int> owner(cands.size(), -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t t, std::vector<char>& seen) {
    for (std::size_t c : adj[t]) {
      if (seen[c]) continue;
      seen[c] = 1;
      if (owner[c] < 0 || augment(static_cast<std::size_t>(owner[c]), seen)) {
        owner[c] = static_cast<int>(t);
        return true;
      }
    }
    return false;
  };
  rep.construction = "region-matching";
  for (std::size_t t = 0; t < targets.size(); ++t) {
    std::vector<char> seen(cands.size(), 0);
    if (!augment(t, seen)) {
      rep.t_labels.clear();
      rep.theta_matches = false;
      rep.certificate = IndependenceCertificate{};
      rep.rule_outcome += "; no sum of S matches " + targets[t];
      return rep;
    }
  }
  std::vector<Pair> matched = fixed;
  for (std::size_t c = 0; c < cands.size(); ++c)
    if (owner[c] >= 0) matched.push_back(cands[c]);
  evaluate(matched, rep);
  return rep;
}

// Crossings at the midpoints of β_{ℓ+1} and β_ℓ; the selection rules first,
// then region matching.
SwitchingReport switching_step(const CaseResult& r, const std::map<std::string, PLFunction>& comps) {
  const ChainGraph& g = *r.graph;
  int l = r.profile->where;
  GraphPoint xa{{EdgeKind::Bridge, l + 1}, g.bridge(l + 1) / 2}, xb{{EdgeKind::Bridge, l}, g.bridge(l) / 2};
  return switching_attempt(r, comps, xa, xb);
}

CaseResult attempt(const CaseInput& in, const Integer& base) {
  CaseResult r;
  r.scale_base = base;
  try {
    r.graph = std::make_shared<const ChainGraph>(ChainGraph::admissible(in.table.genus(), base));
    try {
      r.profile = classify(in.table, in.switching);
      r.plan = choose_blocks(*r.profile, in.table);
      r.chips = chip_solve(*r.graph, in.table, in.switching);
    } catch (const std::invalid_argument& e) {
      throw StageError(std::string("input: ") + e.what(), false);
    }
    std::map<std::string, PLFunction> comps;
    for (int i = 0; i < 6; ++i) {
      r.phi.push_back(build_phi(i, r.graph, in.table, *r.chips));
      if (!in_linear_system(r.chips->divisor, r.phi.back()))
        throw StageError("chips: phi_" + std::to_string(i) + " is not in R(D)", false);
      comps.emplace(std::to_string(i), r.phi.back());
    }
    if (in.switching) {
      PLFunction inf = build_function(r.graph, *r.chips, infinity_schedule(in.table, in.switching->loop, in.switching->h));
      if (!in_linear_system(r.chips->divisor, inf)) throw StageError("chips: phi_inf is not in R(D)", false);
      comps.emplace("inf", inf);
    }
    try {
      r.selection = select_basis(*r.profile, in.table, *r.plan, comps, in.omit_override);
    } catch (const SelectionError& e) {
      throw StageError(e.what(), false);
    }
    try {
      r.build = run_builder(*r.selection, *r.plan, *r.profile, *r.graph);
    } catch (const BuilderError& e) {
      throw StageError(e.what(), true);
    }
    std::vector<PLFunction> fs;
    for (auto& c : r.selection->retained) fs.push_back(c.f);
    r.certificate = certify_independence(fs, r.build->coefficients);
    r.theta = min_combination(fs, r.build->coefficients);
    r.one_more_lemma = true;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string& place = r.build->placed.at(r.selection->retained[i].label);
      int k = std::stoi(place.substr(place.find(':') + 1));
      if (!stays_above_right_of(fs[i] + r.build->coefficients[i] - *r.theta, k)) r.one_more_lemma = false;
    }
    if (!r.certificate->ok) {
      std::string miss;
      for (auto i : r.certificate->failures) miss += " " + r.selection->retained[i].label;
      throw StageError("certify: never uniquely minimal:" + miss, true);
    }
    if (in.switching) {
      r.switching = switching_step(r, comps);
      if (!r.switching->certificate.ok || !r.switching->theta_matches)
        throw StageError("switching: best approximation is not an independence equal to theta", true);
    }
    r.ok = true;
  } catch (const StageError& e) {
    r.error = e.what();
    r.escalations = e.escalate ? -1 : 0;  // marker for prove_case
  }
  return r;
}

}  // namespace

CaseResult prove_case(const CaseInput& input) {
  Integer base = input.scale_base;
  CaseResult r;
  for (int tries = 0;; ++tries) {
    r = attempt(input, base);
    bool retry = r.escalations < 0;
    r.escalations = tries;
    if (r.ok || !retry || tries >= input.max_escalations) break;
    base = base * base;
  }
  return r;
}

// ---------------------------------------------------------------- families

const char* to_string(Family f) {
  switch (f) {
    case Family::VertexAvoiding: return "vertex-avoiding";
    case Family::Switching: return "switching";
    case Family::RamifiedRight: return "ramified-right";
    case Family::RamifiedLeft: return "ramified-left";
    case Family::DecreasingLoop: return "decreasing-loop";
    default: return "decreasing-bridge";
  }
}

std::optional<Family> parse_family(const std::string& name) {
  for (Family f : {Family::VertexAvoiding, Family::Switching, Family::RamifiedRight, Family::RamifiedLeft,
                   Family::DecreasingLoop, Family::DecreasingBridge})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

namespace {

std::string tableau_name(const Tableau& t) {
  std::string s = "top";
  for (int x : t.top) s += " " + std::to_string(x);
  s += " / bottom";
  for (int x : t.bottom) s += " " + std::to_string(x);
  return s + " / l " + std::to_string(t.lingering);
}

bool increasing(const Slopes& s) {
  for (int i = 0; i < 6; ++i)
    if (s[i] < -3 || s[i] > 6 || (i > 0 && s[i - 1] >= s[i])) return false;
  return true;
}

// Depth-first over loops 1..13; each loop raises one index. `special` adds the
// family's extra move once: a loop that also lowers h, or a bridge that lowers h.
struct StepWalker {
  Family family;
  Slopes target;
  std::map<int, Slopes> loops, bridges;
  std::vector<std::pair<std::string, SlopeTable>> out;
  Slopes initial;

  static Slopes unit(int i, int d) {
    Slopes u{};
    u[i] = d;
    return u;
  }

  std::string describe() const {
    std::string d;
    for (auto& [k, c] : loops) {
      std::string mv;
      for (int i = 0; i < 6; ++i)
        if (c[i]) mv += (c[i] > 0 ? "+" : "-") + std::to_string(i);
      d += (d.empty() ? "" : " ") + ("loop" + std::to_string(k) + ":" + mv);
    }
    for (auto& [k, c] : bridges)
      for (int i = 0; i < 6; ++i)
        if (c[i]) d += " bridge" + std::to_string(k) + ":-" + std::to_string(i);
    return d;
  }

  void walk(const Slopes& s, int k, bool used) {
    bool needs = family == Family::DecreasingLoop || family == Family::DecreasingBridge;
    int need = 0;
    for (int i = 0; i < 6; ++i) need += target[i] - s[i];
    if (need + (needs && !used ? 1 : 0) != 14 - k) return;
    if (k == 14) {
      if (s == target && (used || !needs)) out.emplace_back(describe(), slopes_from_steps(13, initial, loops, bridges));
      return;
    }
    auto next = [&](Slopes t, bool u) {
      if (family == Family::DecreasingBridge && !u && k < 13)
        for (int h = 0; h < 6; ++h) {
          Slopes b = t;
          --b[h];
          if (!increasing(b)) continue;
          bridges[k + 1] = unit(h, -1);
          walk(b, k + 1, true);
          bridges.erase(k + 1);
        }
      walk(t, k + 1, u);
    };
    for (int i = 0; i < 6; ++i) {
      Slopes t = s;
      ++t[i];
      if (increasing(t)) {
        loops[k] = unit(i, 1);
        next(t, used);
      }
      if (family == Family::DecreasingLoop && !used)
        for (int h = 0; h < 6; ++h) {
          if (h == i) continue;
          Slopes d = t;
          --d[h];
          if (!increasing(d)) continue;
          Slopes c = unit(i, 1);
          c[h] = -1;
          loops[k] = c;
          next(d, true);
        }
      loops.erase(k);
    }
  }
};

}  // namespace

std::vector<FamilyCase> family_cases(Family f, int genus, const Integer& scale_base) {
  std::vector<FamilyCase> cases;
  if (f == Family::VertexAvoiding || f == Family::Switching) {
    if (f == Family::Switching && genus != 13) throw std::invalid_argument("family_cases: switching cases need g = 13");
    for (const Tableau& t : enumerate_tableaux(genus)) {
      CaseInput in = case_from_tableau(t, scale_base);
      if (f == Family::VertexAvoiding) {
        cases.push_back({tableau_name(t), in});
        continue;
      }
      const Slopes& s = in.table.in(t.lingering);
      for (int h = 0; h < 5; ++h)
        if (s[h + 1] == s[h] + 1) {
          CaseInput sw = in;
          sw.switching = SwitchingWitness{t.lingering, h};
          cases.push_back({tableau_name(t) + " / switch " + std::to_string(h), sw});
        }
    }
    return cases;
  }
  if (genus != 13) throw std::invalid_argument(std::string("family_cases: ") + to_string(f) + " cases need g = 13");
  StepWalker w{f, {0, 1, 2, 3, 4, 5}, {}, {}, {}, {-2, -1, 0, 1, 2, 3}};
  if (f == Family::RamifiedRight) w.target = {0, 1, 2, 3, 4, 6};
  if (f == Family::RamifiedLeft) w.initial = {-3, -1, 0, 1, 2, 3};
  w.walk(w.initial, 1, false);
  for (auto& [name, table] : w.out) cases.push_back({name, CaseInput{table, std::nullopt, scale_base, std::nullopt, 2}});
  return cases;
}

}  // namespace g13
