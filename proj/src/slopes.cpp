#include "artifact/slopes.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace g13 {

namespace {

constexpr Slopes kInitial{-2, -1, 0, 1, 2, 3};
constexpr Slopes kFinal{0, 1, 2, 3, 4, 5};

bool strictly_increasing(const Slopes& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] <= s[i - 1]) return false;
  return true;
}

nlohmann::json slopes_json(const Slopes& s) { return nlohmann::json(std::vector<int>(s.begin(), s.end())); }

Rational mod(const Rational& x, const Rational& L) {
  Rational q = x / L;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return x - Rational(f) * L;
}

}  // namespace

// ---------------------------------------------------------------- tableaux

void validate(const Tableau& t) {
  if (t.genus < 11 || t.genus > 13) throw std::invalid_argument("tableau: genus must be 11, 12 or 13");
  if (t.lingering < 14 - t.genus || t.lingering > 13)
    throw std::invalid_argument("tableau: lingering loop " + std::to_string(t.lingering) + " outside " +
                                std::to_string(14 - t.genus) + "..13");
  for (int i = 1; i < 6; ++i) {
    if (t.top[i] <= t.top[i - 1]) throw std::invalid_argument("tableau: top row not increasing");
    if (t.bottom[i] <= t.bottom[i - 1]) throw std::invalid_argument("tableau: bottom row not increasing");
  }
  for (int i = 0; i < 6; ++i)
    if (t.bottom[i] <= t.top[i]) throw std::invalid_argument("tableau: column " + std::to_string(i) + " not increasing");
  std::set<int> seen(t.top.begin(), t.top.end());
  seen.insert(t.bottom.begin(), t.bottom.end());
  std::set<int> want;
  for (int k = 1; k <= 13; ++k)
    if (k != t.lingering) want.insert(k);
  if (seen != want) throw std::invalid_argument("tableau: symbols must be {1..13} minus the lingering loop");
}

Tableau tableau_from_json(const nlohmann::json& j) {
  Tableau t;
  try {
    auto top = j.at("top").get<std::vector<int>>();
    auto bottom = j.at("bottom").get<std::vector<int>>();
    if (top.size() != 6 || bottom.size() != 6) throw std::invalid_argument("tableau: rows must have 6 entries");
    std::copy(top.begin(), top.end(), t.top.begin());
    std::copy(bottom.begin(), bottom.end(), t.bottom.begin());
    t.lingering = j.at("lingering").get<int>();
    t.genus = j.value("genus", 13);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("tableau json: ") + e.what());
  }
  validate(t);
  return t;
}

nlohmann::json to_json(const Tableau& t) {
  return {{"top", std::vector<int>(t.top.begin(), t.top.end())},
          {"bottom", std::vector<int>(t.bottom.begin(), t.bottom.end())},
          {"lingering", t.lingering},
          {"genus", t.genus}};
}

std::vector<std::pair<std::array<int, 6>, std::array<int, 6>>> enumerate_fillings(const std::vector<int>& symbols) {
  if (symbols.size() != 12) throw std::invalid_argument("enumerate_fillings: need 12 symbols");
  std::vector<std::pair<std::array<int, 6>, std::array<int, 6>>> out;
  std::array<int, 6> top{}, bottom{};
  auto rec = [&](auto&& self, std::size_t i, int nt, int nb) -> void {
    if (i == symbols.size()) {
      out.emplace_back(top, bottom);
      return;
    }
    if (nt < 6) {
      top[nt] = symbols[i];
      self(self, i + 1, nt + 1, nb);
    }
    if (nb < nt) {
      bottom[nb] = symbols[i];
      self(self, i + 1, nt, nb + 1);
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

std::vector<Tableau> enumerate_tableaux(int genus) {
  if (genus < 11 || genus > 13) throw std::invalid_argument("enumerate_tableaux: genus must be 11, 12 or 13");
  std::vector<Tableau> out;
  for (int ling = 14 - genus; ling <= 13; ++ling) {
    std::vector<int> symbols;
    for (int k = 1; k <= 13; ++k)
      if (k != ling) symbols.push_back(k);
    for (auto& [top, bottom] : enumerate_fillings(symbols)) out.push_back(Tableau{top, bottom, ling, genus});
  }
  return out;
}

// ---------------------------------------------------------------- slope tables

SlopeTable::SlopeTable(int genus, std::map<int, Slopes> in, std::map<int, Slopes> out)
    : genus_(genus), in_(std::move(in)), out_(std::move(out)) {
  if (genus < 11 || genus > 13) throw std::invalid_argument("slope table: genus must be 11, 12 or 13");
  for (int k = first_loop(); k <= 14; ++k) {
    if (!in_.count(k)) throw std::invalid_argument("slope table: missing s_" + std::to_string(k));
    if (!strictly_increasing(in_[k])) throw std::invalid_argument("slope table: s_" + std::to_string(k) + " not increasing");
  }
  for (int k = first_loop() - 1; k <= 13; ++k) {
    if (!out_.count(k)) throw std::invalid_argument("slope table: missing s'_" + std::to_string(k));
    if (!strictly_increasing(out_[k]))
      throw std::invalid_argument("slope table: s'_" + std::to_string(k) + " not increasing");
  }
}

nlohmann::json SlopeTable::to_json() const {
  nlohmann::json j{{"genus", genus_}, {"in", nlohmann::json::object()}, {"out", nlohmann::json::object()}};
  for (auto& [k, s] : in_) j["in"][std::to_string(k)] = slopes_json(s);
  for (auto& [k, s] : out_) j["out"][std::to_string(k)] = slopes_json(s);
  return j;
}

SlopeTable slopes_from_tableau(const Tableau& t) {
  validate(t);
  std::map<int, int> col;
  for (int c = 0; c < 6; ++c) col[t.top[c]] = col[t.bottom[c]] = c;
  int k0 = 14 - t.genus;
  std::map<int, Slopes> in, out;
  Slopes s = kInitial;
  if (k0 == 1) out[0] = s;
  for (int k = 1; k <= 13; ++k) {
    if (k >= k0) in[k] = s;
    if (k != t.lingering) ++s[5 - col[k]];
    if (k >= k0 - 1) out[k] = s;
  }
  in[14] = s;
  return SlopeTable(t.genus, std::move(in), std::move(out));
}

SlopeTable slopes_from_steps(int genus, const Slopes& initial, const std::map<int, Slopes>& loop_change,
                             const std::map<int, Slopes>& bridge_change) {
  int k0 = 14 - genus;
  std::map<int, Slopes> in, out;
  out[k0 - 1] = initial;
  Slopes s = initial;
  for (int k = k0; k <= 14; ++k) {
    if (auto it = bridge_change.find(k); it != bridge_change.end())
      for (int i = 0; i < 6; ++i) s[i] += it->second[i];
    in[k] = s;
    if (k == 14) break;
    if (auto it = loop_change.find(k); it != loop_change.end())
      for (int i = 0; i < 6; ++i) s[i] += it->second[i];
    out[k] = s;
  }
  return SlopeTable(genus, std::move(in), std::move(out));
}

int tau(const SlopeTable& st, int k) {
  int t = 0;
  const Slopes& s = st.out(k);
  for (int i = 0; i < 6; ++i) t += s[i] + 2 - i;
  return t;
}

// ---------------------------------------------------------------- profiles

const char* to_string(ItemKind k) {
  switch (k) {
    case ItemKind::Ordinary: return "ordinary";
    case ItemKind::Lingering: return "lingering";
    case ItemKind::DecreasingLoop: return "decreasing-loop";
    case ItemKind::DecreasingBridge: return "decreasing-bridge";
    default: return "switching";
  }
}

nlohmann::json LoopProfile::to_json() const {
  nlohmann::json j{{"special", g13::to_string(special)},
                   {"where", where},
                   {"h", h},
                   {"ramified_right", ramified_right},
                   {"ramified_left", ramified_left}};
  for (auto& [k, kind] : loops) j["loops"][std::to_string(k)] = g13::to_string(kind);
  for (auto& [k, kind] : bridges) j["bridges"][std::to_string(k)] = g13::to_string(kind);
  for (auto& [k, t] : tau) j["tau"][std::to_string(k)] = t;
  return j;
}

namespace {

std::array<int, 6> vanishing(int genus, const Slopes& s) {
  std::array<int, 6> a{};
  for (int j = 0; j < 6; ++j) a[j] = (16 - genus) - s[5 - j];
  return a;
}

}  // namespace

bool RamificationSpec::satisfied_by(const Slopes& s) const {
  auto a = vanishing(genus, s);
  if (a[0] < 0) return false;
  if (genus == 12) return a[1] >= 2;
  if (genus == 11) return a[1] >= 3 || (a[0] >= 1 && a[2] >= 4);
  return true;
}

bool RamificationSpec::exact_for(const Slopes& s) const {
  auto a = vanishing(genus, s);
  if (genus == 13) return a == std::array<int, 6>{0, 1, 2, 3, 4, 5};
  if (genus == 12) return a == std::array<int, 6>{0, 2, 3, 4, 5, 6};
  return a == std::array<int, 6>{0, 3, 4, 5, 6, 7} || a == std::array<int, 6>{1, 2, 4, 5, 6, 7};
}

LoopProfile classify(const SlopeTable& st, std::optional<SwitchingWitness> witness) {
  LoopProfile p;
  int k0 = st.first_loop();
  int specials = 0;
  auto mark = [&](ItemKind kind, int where, int h) {
    ++specials;
    p.special = kind;
    p.where = where;
    p.h = h;
  };
  for (int k = k0 - 1; k <= 13; ++k) p.tau[k] = tau(st, k);
  if (witness && (witness->loop < k0 || witness->loop > 13 || witness->h < 0 || witness->h > 4))
    throw std::invalid_argument("classify: switching witness out of range");
  for (int k = k0; k <= 13; ++k) {
    const Slopes &a = st.in(k), &b = st.out(k);
    int up = 0, down = 0, h = -1;
    for (int i = 0; i < 6; ++i) {
      int d = b[i] - a[i];
      if (d == 1) ++up;
      else if (d == -1) ++down, h = i;
      else if (d != 0) throw std::invalid_argument("classify: slope jumps by more than 1 on loop " + std::to_string(k));
    }
    ItemKind kind = ItemKind::Ordinary;
    if (down > 1 || up > 1) throw std::invalid_argument("classify: loop " + std::to_string(k) + " has multiplicity above 1");
    if (down == 1) {
      kind = ItemKind::DecreasingLoop;
      mark(kind, k, h);
    } else if (up == 0) {
      if (witness && witness->loop == k) {
        if (a[witness->h + 1] != a[witness->h] + 1)
          throw std::invalid_argument("classify: slopes h and h+1 are not consecutive on the switching loop");
        kind = ItemKind::Switching;
        mark(kind, k, witness->h);
      } else {
        kind = ItemKind::Lingering;
        mark(kind, k, -1);
      }
    }
    if (witness && witness->loop == k && kind != ItemKind::Switching)
      throw std::invalid_argument("classify: switching witness on a loop whose slopes change");
    p.loops[k] = kind;
  }
  for (int k = k0 + 1; k <= 14; ++k) {
    const Slopes &a = st.out(k - 1), &b = st.in(k);
    int down = 0, h = -1;
    for (int i = 0; i < 6; ++i) {
      int d = b[i] - a[i];
      if (d == -1) ++down, h = i;
      else if (d != 0) throw std::invalid_argument("classify: bridge " + std::to_string(k) + " raises a slope");
    }
    if (down > 1) throw std::invalid_argument("classify: bridge " + std::to_string(k) + " has multiplicity above 1");
    ItemKind kind = down ? ItemKind::DecreasingBridge : ItemKind::Ordinary;
    if (down) mark(kind, k, h);
    p.bridges[k] = kind;
  }
  if (st.in(k0) != st.out(k0 - 1)) throw std::invalid_argument("classify: first bridge must have constant slopes");
  RamificationSpec spec{st.genus()};
  if (!spec.satisfied_by(st.out(k0 - 1)))
    throw std::invalid_argument("classify: slopes on the first bridge violate the ramification condition");
  p.ramified_left = !spec.exact_for(st.out(k0 - 1));
  p.ramified_right = st.in(14) != kFinal;
  specials += p.ramified_left + p.ramified_right;
  if (specials > 1) throw std::invalid_argument("classify: more than one item of positive multiplicity");
  return p;
}

// ---------------------------------------------------------------- chips

ChipSolution chip_solve(const ChainGraph& g, const SlopeTable& st, std::optional<SwitchingWitness> witness) {
  ChipSolution sol;
  int k0 = g.first_loop();
  if (st.first_loop() != k0) throw std::invalid_argument("chip_solve: genus mismatch");
  sol.left_multiplicity = 16 - g.genus();
  sol.divisor.add(g, vertex_w(g, k0 - 1), sol.left_multiplicity);
  for (int k = k0; k <= 13; ++k) {
    const Rational &ell = g.top(k), L = ell + g.bottom(k);
    const Slopes &a = st.in(k), &b = st.out(k);
    std::optional<Rational> pos;
    for (int i = 0; i < 6; ++i) {
      int d = b[i] - a[i];
      if (d < -1 || d > 1) throw std::invalid_argument("chip_solve: slope jump above 1 on loop " + std::to_string(k));
      if (d != 1) continue;
      Rational want = mod(Rational(a[i] + 1) * ell, L);
      if (pos && *pos != want) throw std::invalid_argument("chip_solve: two slopes rise on loop " + std::to_string(k));
      pos = want;
    }
    if (witness && witness->loop == k) {
      if (pos) throw std::invalid_argument("chip_solve: switching loop " + std::to_string(k) + " has a rising slope");
      pos = mod(Rational(a[witness->h] + 1) * ell, L);
    }
    if (!pos) {
      std::vector<Rational> bad{Rational(0), ell};
      for (int sigma = -3; sigma <= 6; ++sigma) bad.push_back(mod(Rational(sigma + 1) * ell, L));
      std::sort(bad.begin(), bad.end());
      bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
      Rational best_gap = -1, best_mid;
      for (std::size_t j = 0; j < bad.size(); ++j) {
        Rational lo = bad[j], hi = j + 1 < bad.size() ? bad[j + 1] : bad[0] + L;
        if (hi - lo > best_gap) {
          best_gap = hi - lo;
          best_mid = mod((lo + hi) / 2, L);
        }
      }
      pos = best_mid;
    }
    sol.chip[k] = *pos;
    GraphPoint p = *pos <= ell ? GraphPoint{{EdgeKind::Top, k}, *pos} : GraphPoint{{EdgeKind::Bottom, k}, L - *pos};
    sol.divisor.add(g, p, 1);
  }
  return sol;
}

// ---------------------------------------------------------------- functions

namespace {

// Restriction to γ_k entering with slope s and leaving with slope t; writes
// the top and bottom segments and returns the rise from v_k to w_k.
void loop_function(const ChainGraph& g, int k, const Rational& chip, int s, int t, std::vector<Segment>& top,
                   std::vector<Segment>& bottom) {
  const Rational &ell = g.top(k), &m = g.bottom(k);
  Rational L = ell + m;
  std::map<Rational, int> div;  // principal divisor on the circle
  auto put = [&](const Rational& x, int c) { div[mod(x, L)] += c; };
  put(Rational(0), -s);
  put(ell, t);
  switch (t - s) {
    case 1:
      if (mod(Rational(s + 1) * ell, L) != chip)
        throw std::invalid_argument("build_function: slope cannot rise on loop " + std::to_string(k) + " with this chip");
      put(chip, -1);
      break;
    case 0:
      put(chip, -1);
      put(chip - Rational(s) * ell, 1);
      break;
    case -1:
      put(-Rational(t) * ell, 1);
      break;
    default:
      throw std::invalid_argument("build_function: slope jump above 1 on loop " + std::to_string(k));
  }
  div.try_emplace(Rational(0), 0);
  std::vector<Rational> pts;
  std::vector<int> cum;
  int c = 0;
  Rational weighted = 0;
  for (auto it = div.begin(); it != div.end(); ++it) {
    c += it->second;
    auto nx = std::next(it);
    Rational end = nx == div.end() ? L : nx->first;
    pts.push_back(it->first);
    cum.push_back(c);
    weighted += Rational(c) * (end - it->first);
  }
  if (c != 0) throw std::logic_error("build_function: circle divisor of nonzero degree");
  Rational sigma0 = weighted / L;
  if (!is_integer(sigma0)) throw std::logic_error("build_function: circle divisor is not principal");
  int s0 = static_cast<int>(sigma0.get_num().get_si());
  std::vector<int> slope(cum.size());
  for (std::size_t j = 0; j < cum.size(); ++j) slope[j] = s0 - cum[j];
  top.clear();
  bottom.clear();
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (pts[j] < ell) top.push_back({pts[j], slope[j]});
  // Bottom edge from v_k: circle coordinate L − y, slope reversed.
  std::vector<Rational> ys{Rational(0)};
  for (std::size_t j = pts.size(); j-- > 0;)
    if (pts[j] > ell) ys.push_back(L - pts[j]);
  for (auto& y : ys) {
    if (y >= m) continue;
    Rational x = L - y;
    int sl = slope.front();
    for (std::size_t j = 0; j < pts.size() && pts[j] < x; ++j) sl = slope[j];
    bottom.push_back({y, -sl});
  }
}

}  // namespace

PLFunction build_function(const GraphPtr& g, const ChipSolution& chips, const SlopeSchedule& schedule) {
  const auto& edges = g->edges();
  PLFunction::Pieces pieces(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    EdgeId id = edges[e];
    if (id.kind != EdgeKind::Bridge) continue;
    auto it = schedule.find(id.k);
    if (it == schedule.end()) throw std::invalid_argument("build_function: no slopes for bridge " + std::to_string(id.k));
    auto [s0, s1] = it->second;
    if (s1 == s0) pieces[e] = {{Rational(0), s0}};
    else if (s1 == s0 - 1) pieces[e] = {{Rational(0), s0}, {g->bridge(id.k) / 4, s1}};
    else throw std::invalid_argument("build_function: bridge " + std::to_string(id.k) + " slope may only drop by 1");
    if (id.k <= 13) {
      auto nx = schedule.find(id.k + 1);
      if (nx == schedule.end()) throw std::invalid_argument("build_function: no slopes for bridge " + std::to_string(id.k + 1));
      loop_function(*g, id.k, chips.chip.at(id.k), s1, nx->second.start, pieces[e + 1], pieces[e + 2]);
    }
  }
  return PLFunction(g, Rational(0), std::move(pieces));
}

SlopeSchedule standard_schedule(const SlopeTable& st, int i) {
  SlopeSchedule s;
  for (int k = st.first_loop(); k <= 14; ++k) s[k] = {st.out(k - 1)[i], st.in(k)[i]};
  return s;
}

PLFunction build_phi(int i, const GraphPtr& g, const SlopeTable& st, const ChipSolution& chips) {
  if (i < 0 || i > 5) throw std::out_of_range("build_phi: index");
  return build_function(g, chips, standard_schedule(st, i));
}

SlopeSchedule infinity_schedule(const SlopeTable& st, int loop, int h) {
  SlopeSchedule s;
  for (int k = st.first_loop(); k <= 14; ++k) {
    int i = k <= loop ? h : h + 1;
    s[k] = {st.out(k - 1)[i], st.in(k)[i]};
  }
  return s;
}

}  // namespace g13
