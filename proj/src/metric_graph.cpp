#include "artifact/metric_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace g13 {

std::string to_string(EdgeId e) {
  const char* kind = e.kind == EdgeKind::Bridge ? "bridge" : e.kind == EdgeKind::Top ? "top" : "bottom";
  return std::string(kind) + ":" + std::to_string(e.k);
}

EdgeId parse_edge(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("edge id: missing ':' in " + s);
  std::string kind = s.substr(0, colon);
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(s.substr(colon + 1), &used);
    if (used != s.size() - colon - 1) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("edge id: bad index in " + s);
  }
  if (kind == "bridge") return {EdgeKind::Bridge, k};
  if (kind == "top") return {EdgeKind::Top, k};
  if (kind == "bottom") return {EdgeKind::Bottom, k};
  throw std::invalid_argument("edge id: unknown kind in " + s);
}

// ---------------------------------------------------------------- ChainGraph

ChainGraph ChainGraph::admissible(int genus, const Integer& scale_base) {
  if (genus < 11 || genus > 13) throw std::invalid_argument("chain of loops: genus must be 11, 12 or 13");
  if (scale_base < 2) throw std::invalid_argument("chain of loops: scale base must be at least 2");
  ChainGraph g;
  g.genus_ = genus;
  g.base_ = scale_base;
  Rational b(scale_base);
  for (int k = g.first_loop(); k <= last_loop(); ++k) {
    g.bottom_[k] = pow(b, 2 * (13 - k));
    g.top_[k] = pow(b, 2 * (13 - k) + 1);
  }
  for (int k = g.first_loop(); k <= last_bridge(); ++k) g.bridge_[k] = pow(b, 40 - k);
  g.finish();
  return g;
}

ChainGraph ChainGraph::custom(int genus, std::map<int, Rational> top, std::map<int, Rational> bottom,
                              std::map<int, Rational> bridge, std::optional<Integer> min_factor) {
  if (genus < 11 || genus > 13) throw std::invalid_argument("chain of loops: genus must be 11, 12 or 13");
  ChainGraph g;
  g.genus_ = genus;
  int k0 = g.first_loop();
  auto take = [&](std::map<int, Rational>& src, std::map<int, Rational>& dst, int last, const char* what) {
    for (int k = k0; k <= last; ++k) {
      auto it = src.find(k);
      if (it == src.end()) throw std::invalid_argument(std::string("chain of loops: missing ") + what + " length " + std::to_string(k));
      if (it->second <= 0) throw std::invalid_argument(std::string("chain of loops: nonpositive ") + what + " length " + std::to_string(k));
      dst[k] = it->second;
    }
  };
  take(top, g.top_, last_loop(), "top");
  take(bottom, g.bottom_, last_loop(), "bottom");
  take(bridge, g.bridge_, last_bridge(), "bridge");
  if (min_factor) {
    Rational f(*min_factor);
    g.base_ = *min_factor;
    auto need = [&](const Rational& big, const Rational& small, const std::string& what) {
      if (big < f * small) throw std::invalid_argument("chain of loops: scale tower violated at " + what);
    };
    for (int k = k0; k <= last_loop(); ++k) {
      std::string at = std::to_string(k);
      if (k < last_loop()) need(g.bottom_[k], g.top_[k + 1], "m_" + at);
      need(g.top_[k], g.bottom_[k], "l_" + at);
      need(g.bridge_[k + 1], g.top_[k], "n_" + std::to_string(k + 1));
      need(g.bridge_[k], g.bridge_[k + 1], "n_" + at);
    }
  }
  g.finish();
  return g;
}

ChainGraph ChainGraph::from_json(const nlohmann::json& config) {
  int genus = config.value("g", 13);
  Integer base(10000);
  if (config.contains("scale_base")) {
    const auto& sb = config["scale_base"];
    Rational r = sb.is_string() ? parse_rational(sb.get<std::string>()) : Rational(sb.get<long>());
    if (!is_integer(r)) throw std::invalid_argument("graph config: scale_base must be an integer");
    base = r.get_num();
  }
  ChainGraph g = admissible(genus, base);
  bool m2_l2 = config.contains("overrides") && config["overrides"].value("m2_equals_l2", false);
  if (m2_l2) {
    if (g.first_loop() > 2) throw std::invalid_argument("graph config: m2_equals_l2 needs loop 2");
    auto bottom = g.bottom_;
    bottom[2] = g.top_[2];
    ChainGraph r = custom(genus, g.top_, bottom, g.bridge_, std::nullopt);
    r.base_ = base;
    return r;
  }
  return g;
}

nlohmann::json ChainGraph::to_json() const {
  bool m2_l2 = first_loop() <= 2 && top_.at(2) == bottom_.at(2);
  return {{"g", genus_}, {"scale_base", base_.get_str()}, {"overrides", {{"m2_equals_l2", m2_l2}}}};
}

void ChainGraph::finish() {
  edges_.clear();
  for (int k = first_loop(); k <= last_bridge(); ++k) {
    edges_.push_back({EdgeKind::Bridge, k});
    if (k <= last_loop()) {
      edges_.push_back({EdgeKind::Top, k});
      edges_.push_back({EdgeKind::Bottom, k});
    }
  }
}

bool ChainGraph::has_edge(EdgeId e) const {
  if (e.kind == EdgeKind::Bridge) return e.k >= first_loop() && e.k <= last_bridge();
  return e.k >= first_loop() && e.k <= last_loop();
}

std::size_t ChainGraph::edge_index(EdgeId e) const {
  if (!has_edge(e)) throw std::out_of_range("no edge " + to_string(e));
  std::size_t base = 3 * static_cast<std::size_t>(e.k - first_loop());
  return base + (e.kind == EdgeKind::Bridge ? 0 : e.kind == EdgeKind::Top ? 1 : 2);
}

const Rational& ChainGraph::length(EdgeId e) const {
  if (!has_edge(e)) throw std::out_of_range("no edge " + to_string(e));
  switch (e.kind) {
    case EdgeKind::Bridge: return bridge_.at(e.k);
    case EdgeKind::Top: return top_.at(e.k);
    default: return bottom_.at(e.k);
  }
}

// ---------------------------------------------------------------- points

GraphPoint canonical(const ChainGraph& g, GraphPoint p) {
  const Rational& len = g.length(p.edge);
  if (p.offset < 0 || p.offset > len) throw std::out_of_range("point offset outside edge " + to_string(p.edge));
  int k = p.edge.k;
  switch (p.edge.kind) {
    case EdgeKind::Bridge:
      if (p.offset == 0 && k > g.first_loop()) return {{EdgeKind::Top, k - 1}, g.top(k - 1)};
      if (p.offset == len && k < ChainGraph::last_bridge()) return {{EdgeKind::Top, k}, Rational(0)};
      return p;
    case EdgeKind::Bottom:
      if (p.offset == 0) return {{EdgeKind::Top, k}, Rational(0)};
      if (p.offset == len) return {{EdgeKind::Top, k}, g.top(k)};
      return p;
    default:
      return p;
  }
}

GraphPoint vertex_v(const ChainGraph& g, int k) {
  if (k == ChainGraph::last_bridge()) return {{EdgeKind::Bridge, k}, g.bridge(k)};
  return canonical(g, {{EdgeKind::Top, k}, Rational(0)});
}

GraphPoint vertex_w(const ChainGraph& g, int k) {
  if (k == g.first_loop() - 1) return {{EdgeKind::Bridge, g.first_loop()}, Rational(0)};
  return canonical(g, {{EdgeKind::Top, k}, g.top(k)});
}

nlohmann::json to_json(const GraphPoint& p) {
  return {{"edge", to_string(p.edge)}, {"offset", to_string(p.offset)}};
}

GraphPoint point_from_json(const ChainGraph& g, const nlohmann::json& j) {
  GraphPoint p{parse_edge(j.at("edge").get<std::string>()), parse_rational(j.at("offset").get<std::string>())};
  return canonical(g, p);
}

std::string to_string(const GraphPoint& p) { return to_string(p.edge) + "@" + to_string(p.offset); }

// ---------------------------------------------------------------- divisors

void GraphDivisor::add(const ChainGraph& g, GraphPoint p, int mult) {
  if (!mult) return;
  GraphPoint c = canonical(g, std::move(p));
  int& m = pts_[c];
  m += mult;
  if (!m) pts_.erase(c);
}

int GraphDivisor::at(const ChainGraph& g, GraphPoint p) const {
  auto it = pts_.find(canonical(g, std::move(p)));
  return it == pts_.end() ? 0 : it->second;
}

int GraphDivisor::degree() const {
  int d = 0;
  for (auto& [p, m] : pts_) d += m;
  return d;
}

bool GraphDivisor::effective() const {
  return std::all_of(pts_.begin(), pts_.end(), [](auto& pm) { return pm.second > 0; });
}

GraphDivisor GraphDivisor::operator+(const GraphDivisor& o) const {
  GraphDivisor r = *this;
  for (auto& [p, m] : o.pts_) {
    int& x = r.pts_[p];
    x += m;
    if (!x) r.pts_.erase(p);
  }
  return r;
}

GraphDivisor GraphDivisor::operator*(int c) const {
  GraphDivisor r;
  if (!c) return r;
  for (auto& [p, m] : pts_) r.pts_[p] = m * c;
  return r;
}

GraphDivisor GraphDivisor::operator-(const GraphDivisor& o) const { return *this + o * -1; }

nlohmann::json GraphDivisor::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (auto& [p, m] : pts_) {
    nlohmann::json e = g13::to_json(p);
    e["multiplicity"] = m;
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------- PL functions

PLFunction::PLFunction(GraphPtr graph, Rational base, Pieces pieces)
    : graph_(std::move(graph)), base_(std::move(base)), pieces_(std::move(pieces)) {
  const auto& edges = graph_->edges();
  if (pieces_.size() != edges.size()) throw std::invalid_argument("PL function: wrong number of edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& segs = pieces_[i];
    const Rational& len = graph_->length(edges[i]);
    if (segs.empty() || segs.front().start != 0)
      throw std::invalid_argument("PL function: edge " + to_string(edges[i]) + " must start at offset 0");
    for (std::size_t j = 1; j < segs.size(); ++j)
      if (segs[j].start <= segs[j - 1].start)
        throw std::invalid_argument("PL function: breakpoints not increasing on " + to_string(edges[i]));
    if (segs.back().start >= len)
      throw std::invalid_argument("PL function: breakpoint beyond edge end on " + to_string(edges[i]));
  }
  normalize();
  // Propagate values left to right and check that each loop closes up.
  start_.assign(edges.size(), Rational(0));
  Rational at_w = base_;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    EdgeId e = edges[i];
    if (e.kind == EdgeKind::Bridge) {
      start_[i] = at_w;
      if (e.k < ChainGraph::last_bridge()) {
        Rational at_v = value_at(i, graph_->length(e));
        start_[i + 1] = at_v;
        start_[i + 2] = at_v;
        Rational via_top = value_at(i + 1, graph_->top(e.k));
        Rational via_bottom = value_at(i + 2, graph_->bottom(e.k));
        if (via_top != via_bottom)
          throw std::invalid_argument("PL function: loop " + std::to_string(e.k) + " does not close up");
        at_w = via_top;
      }
    }
  }
}

PLFunction PLFunction::constant(GraphPtr graph, const Rational& c) {
  Pieces p(graph->edges().size(), std::vector<Segment>{{Rational(0), 0}});
  return PLFunction(std::move(graph), c, std::move(p));
}

void PLFunction::normalize() {
  for (auto& segs : pieces_) {
    std::vector<Segment> out;
    for (auto& s : segs)
      if (out.empty() || out.back().slope != s.slope) out.push_back(s);
    segs = std::move(out);
  }
}

Rational PLFunction::value_at(std::size_t edge, const Rational& x) const {
  const auto& segs = pieces_[edge];
  Rational v = start_[edge];
  for (std::size_t j = 0; j < segs.size(); ++j) {
    if (x <= segs[j].start) break;
    const Rational& end = j + 1 < segs.size() && segs[j + 1].start < x ? segs[j + 1].start : x;
    v += segs[j].slope * (end - segs[j].start);
  }
  return v;
}

Rational PLFunction::value_at(const GraphPoint& p) const { return value_at(graph_->edge_index(p.edge), p.offset); }

int PLFunction::slope_right(std::size_t edge, const Rational& x) const {
  const auto& segs = pieces_[edge];
  int s = segs.front().slope;
  for (auto& seg : segs) {
    if (seg.start > x) break;
    s = seg.slope;
  }
  return s;
}

int PLFunction::slope_left(std::size_t edge, const Rational& x) const {
  const auto& segs = pieces_[edge];
  int s = segs.front().slope;
  for (auto& seg : segs) {
    if (seg.start >= x) break;
    s = seg.slope;
  }
  return s;
}

namespace {

std::vector<Segment> add_segments(const std::vector<Segment>& a, const std::vector<Segment>& b) {
  std::vector<Segment> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    Rational x;
    if (j >= b.size() || (i < a.size() && a[i].start < b[j].start)) x = a[i].start;
    else x = b[j].start;
    while (i < a.size() && a[i].start == x) ++i;
    while (j < b.size() && b[j].start == x) ++j;
    out.push_back({x, a[i - 1].slope + b[j - 1].slope});
  }
  return out;
}

}  // namespace

PLFunction PLFunction::operator+(const PLFunction& o) const {
  if (graph_ != o.graph_ && !(graph_->edges() == o.graph_->edges()))
    throw std::invalid_argument("PL function: graphs differ");
  Pieces p(pieces_.size());
  for (std::size_t e = 0; e < pieces_.size(); ++e) p[e] = add_segments(pieces_[e], o.pieces_[e]);
  return PLFunction(graph_, base_ + o.base_, std::move(p));
}

PLFunction PLFunction::operator+(const Rational& c) const {
  PLFunction r = *this;
  r.base_ += c;
  for (auto& s : r.start_) s += c;
  return r;
}

PLFunction PLFunction::operator-() const {
  Pieces p = pieces_;
  for (auto& segs : p)
    for (auto& s : segs) s.slope = -s.slope;
  return PLFunction(graph_, -base_, std::move(p));
}

bool PLFunction::same_as(const PLFunction& o) const { return base_ == o.base_ && pieces_ == o.pieces_; }

bool PLFunction::same_on_loop(const PLFunction& o, int k) const {
  std::size_t t = graph_->edge_index({EdgeKind::Top, k});
  return pieces_[t] == o.pieces_[t] && pieces_[t + 1] == o.pieces_[t + 1];
}

Rational PLFunction::minimum() const {
  Rational best = base_;
  const auto& edges = graph_->edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (auto& s : pieces_[e]) best = std::min(best, value_at(e, s.start));
    best = std::min(best, value_at(e, graph_->length(edges[e])));
  }
  return best;
}

GraphDivisor pl_divisor(const PLFunction& psi) {
  const ChainGraph& g = *psi.graph();
  GraphDivisor d;
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& segs = psi.segments(e);
    d.add(g, {edges[e], Rational(0)}, -segs.front().slope);
    for (std::size_t j = 1; j < segs.size(); ++j) d.add(g, {edges[e], segs[j].start}, segs[j - 1].slope - segs[j].slope);
    d.add(g, {edges[e], g.length(edges[e])}, segs.back().slope);
  }
  return d;
}

bool in_linear_system(const GraphDivisor& d, const PLFunction& psi) { return (d + pl_divisor(psi)).effective(); }

// ---------------------------------------------------------------- envelopes

namespace {

struct EnvelopePiece {
  Rational start;
  std::size_t arg;
};

// Lower envelope of lines f_i(x) = va[i] + s[i](x − a) on [a, b].
std::vector<EnvelopePiece> envelope(const std::vector<Rational>& va, const std::vector<int>& s, const Rational& a,
                                    const Rational& b) {
  std::size_t cur = 0;
  for (std::size_t i = 1; i < va.size(); ++i)
    if (va[i] < va[cur] || (va[i] == va[cur] && s[i] < s[cur])) cur = i;
  std::vector<EnvelopePiece> out{{a, cur}};
  Rational x = a;
  for (;;) {
    std::optional<Rational> next;
    std::size_t who = cur;
    for (std::size_t j = 0; j < va.size(); ++j) {
      if (s[j] >= s[cur]) continue;
      Rational t = a + (va[j] - va[cur]) / Rational(s[cur] - s[j]);
      if (t < x) continue;
      if (!next || t < *next || (t == *next && s[j] < s[who])) {
        next = t;
        who = j;
      }
    }
    if (!next || *next >= b) break;
    x = *next;
    cur = who;
    if (out.back().start == x) out.back().arg = cur;
    else out.push_back({x, cur});
  }
  return out;
}

// Walks one edge of every function in lockstep, calling visit(a, b, va, slopes)
// on each piece between consecutive breakpoints.
template <typename Visit>
void sweep_edge(const std::vector<PLFunction>& psi, const std::vector<Rational>& b, std::size_t e,
                const Rational& len, Visit&& visit) {
  std::vector<Rational> cuts{Rational(0)};
  for (auto& f : psi)
    for (auto& seg : f.segments(e)) cuts.push_back(seg.start);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(len);
  std::size_t n = psi.size();
  std::vector<std::size_t> pos(n, 0);
  std::vector<Rational> va(n);
  std::vector<int> sl(n);
  for (std::size_t i = 0; i < n; ++i) va[i] = psi[i].start_value(e) + b[i];
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rational &x0 = cuts[c], &x1 = cuts[c + 1];
    for (std::size_t i = 0; i < n; ++i) {
      const auto& segs = psi[i].segments(e);
      while (pos[i] + 1 < segs.size() && segs[pos[i] + 1].start <= x0) ++pos[i];
      sl[i] = segs[pos[i]].slope;
    }
    visit(x0, x1, va, sl);
    Rational dx = x1 - x0;
    for (std::size_t i = 0; i < n; ++i) va[i] += sl[i] * dx;
  }
}

}  // namespace

PLFunction min_combination(const std::vector<PLFunction>& psi, const std::vector<Rational>& b) {
  if (psi.empty() || psi.size() != b.size()) throw std::invalid_argument("min_combination: size mismatch");
  const GraphPtr& graph = psi.front().graph();
  const auto& edges = graph->edges();
  PLFunction::Pieces pieces(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& out = pieces[e];
    sweep_edge(psi, b, e, graph->length(edges[e]), [&](const Rational& x0, const Rational& x1, auto& va, auto& sl) {
      for (auto& p : envelope(va, sl, x0, x1)) {
        int s = sl[p.arg];
        if (out.empty() || out.back().slope != s) out.push_back({p.start, s});
      }
    });
  }
  Rational base = psi[0].base() + b[0];
  for (std::size_t i = 1; i < psi.size(); ++i) base = std::min(base, Rational(psi[i].base() + b[i]));
  return PLFunction(graph, base, std::move(pieces));
}

IndependenceCertificate certify_independence(const std::vector<PLFunction>& psi, const std::vector<Rational>& b) {
  if (psi.empty() || psi.size() != b.size()) throw std::invalid_argument("certify_independence: size mismatch");
  const GraphPtr& graph = psi.front().graph();
  const auto& edges = graph->edges();
  std::size_t n = psi.size();
  std::vector<std::optional<CertificateEntry>> best(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    sweep_edge(psi, b, e, graph->length(edges[e]), [&](const Rational& x0, const Rational& x1, auto& va, auto& sl) {
      auto env = envelope(va, sl, x0, x1);
      for (std::size_t p = 0; p < env.size(); ++p) {
        const Rational& lo = env[p].start;
        const Rational& hi = p + 1 < env.size() ? env[p + 1].start : x1;
        if (lo == hi) continue;
        Rational mid = (lo + hi) / 2, dx = mid - x0;
        std::size_t arg = env[p].arg;
        Rational own = va[arg] + sl[arg] * dx;
        std::optional<Rational> second;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == arg) continue;
          Rational v = va[j] + sl[j] * dx;
          if (!second || v < *second) second = v;
        }
        Rational gap = second ? *second - own : Rational(1);
        if (gap <= 0) continue;
        if (!best[arg] || best[arg]->margin < gap)
          best[arg] = CertificateEntry{arg, b[arg], canonical(*graph, {edges[e], mid}), gap};
      }
    });
  }
  IndependenceCertificate cert;
  for (std::size_t i = 0; i < n; ++i) {
    if (best[i]) {
      if (cert.entries.empty() || best[i]->margin < cert.min_margin) cert.min_margin = best[i]->margin;
      cert.entries.push_back(*best[i]);
    } else {
      cert.failures.push_back(i);
    }
  }
  cert.ok = cert.failures.empty();
  return cert;
}

nlohmann::json IndependenceCertificate::to_json(const std::vector<std::string>& labels) const {
  auto name = [&](std::size_t i) { return i < labels.size() ? labels[i] : std::to_string(i); };
  nlohmann::json j{{"ok", ok}, {"min_margin", to_string(min_margin)}};
  j["entries"] = nlohmann::json::array();
  for (auto& e : entries)
    j["entries"].push_back({{"function", name(e.index)},
                            {"coefficient", to_string(e.coefficient)},
                            {"witness", g13::to_json(e.witness)},
                            {"margin", to_string(e.margin)}});
  j["failures"] = nlohmann::json::array();
  for (auto i : failures) j["failures"].push_back(name(i));
  return j;
}

}  // namespace g13
