#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "artifact/rational.hpp"

namespace g13 {

// Chain of g loops γ_k (k = 14−g..13), joined by bridges β_k (k = 14−g..14).
// β_k runs from w_{k−1} to v_k; the top edge of γ_k (length ℓ_k) and its
// bottom edge (length m_k) both run from v_k to w_k.
enum class EdgeKind { Bridge, Top, Bottom };

struct EdgeId {
  EdgeKind kind;
  int k;
  auto operator<=>(const EdgeId&) const = default;
};

std::string to_string(EdgeId e);  // "bridge:4", "top:3", "bottom:3"
EdgeId parse_edge(const std::string& s);

class ChainGraph {
 public:
  // Lengths on the power tower of B: m_k = B^{2(13−k)}, ℓ_k = B^{2(13−k)+1},
  // n_k = B^{40−k}. Every step of ℓ_{k+1} ≪ m_k ≪ ℓ_k ≪ n_{k+1} ≪ n_k is a
  // factor of at least B, and m₁₃ = 1.
  static ChainGraph admissible(int genus, const Integer& scale_base);

  // Explicit lengths, indexed by loop/bridge number (entries below 14−g are
  // ignored). With min_factor set, the ≪-chain is enforced with that factor;
  // without it only positivity is checked.
  static ChainGraph custom(int genus, std::map<int, Rational> top, std::map<int, Rational> bottom,
                           std::map<int, Rational> bridge, std::optional<Integer> min_factor);

  // {"g":13,"scale_base":"10000","overrides":{"m2_equals_l2":false}}
  static ChainGraph from_json(const nlohmann::json& config);
  nlohmann::json to_json() const;

  int genus() const { return genus_; }
  int first_loop() const { return 14 - genus_; }
  static constexpr int last_loop() { return 13; }
  static constexpr int last_bridge() { return 14; }
  const Integer& scale_base() const { return base_; }

  const Rational& top(int k) const { return top_.at(k); }
  const Rational& bottom(int k) const { return bottom_.at(k); }
  const Rational& bridge(int k) const { return bridge_.at(k); }
  const Rational& length(EdgeId e) const;

  // Left-to-right order: β_{k0}, top k0, bottom k0, β_{k0+1}, …, β₁₄.
  const std::vector<EdgeId>& edges() const { return edges_; }
  std::size_t edge_index(EdgeId e) const;
  bool has_edge(EdgeId e) const;

 private:
  void finish();
  int genus_ = 13;
  Integer base_ = 0;
  std::map<int, Rational> top_, bottom_, bridge_;
  std::vector<EdgeId> edges_;
};

using GraphPtr = std::shared_ptr<const ChainGraph>;

// A point given by edge and offset from the edge's left endpoint. Vertices
// have one canonical form: v_k ↦ (top k, 0), w_k ↦ (top k, ℓ_k), the leftmost
// vertex ↦ (bridge k0, 0) and v₁₄ ↦ (bridge 14, n₁₄).
struct GraphPoint {
  EdgeId edge;
  Rational offset;
  bool operator==(const GraphPoint&) const = default;
  bool operator<(const GraphPoint& o) const {
    if (edge != o.edge) return edge < o.edge;
    return offset < o.offset;
  }
};

GraphPoint canonical(const ChainGraph& g, GraphPoint p);
nlohmann::json to_json(const GraphPoint& p);
GraphPoint point_from_json(const ChainGraph& g, const nlohmann::json& j);
std::string to_string(const GraphPoint& p);

// Named vertices.
GraphPoint vertex_v(const ChainGraph& g, int k);
GraphPoint vertex_w(const ChainGraph& g, int k);

class GraphDivisor {
 public:
  GraphDivisor() = default;
  void add(const ChainGraph& g, GraphPoint p, int mult);
  int at(const ChainGraph& g, GraphPoint p) const;
  int degree() const;
  bool effective() const;
  const std::map<GraphPoint, int>& points() const { return pts_; }
  GraphDivisor operator+(const GraphDivisor& o) const;
  GraphDivisor operator-(const GraphDivisor& o) const;
  GraphDivisor operator*(int c) const;
  bool operator==(const GraphDivisor& o) const = default;
  nlohmann::json to_json() const;

 private:
  std::map<GraphPoint, int> pts_;  // canonical points, nonzero multiplicities
};

struct Segment {
  Rational start;  // offset where this slope takes over
  int slope;
  bool operator==(const Segment&) const = default;
};

// Piecewise linear function with integer slopes. Per edge, segments start at
// offset 0 and are strictly increasing in start; adjacent segments may repeat
// a slope (normalize() merges them).
class PLFunction {
 public:
  using Pieces = std::vector<std::vector<Segment>>;  // indexed like graph.edges()

  // Throws std::invalid_argument when the pieces are malformed or the values
  // around a loop do not close up.
  PLFunction(GraphPtr graph, Rational base, Pieces pieces);
  static PLFunction constant(GraphPtr graph, const Rational& c);

  const GraphPtr& graph() const { return graph_; }
  const Rational& base() const { return base_; }
  const std::vector<Segment>& segments(std::size_t edge) const { return pieces_[edge]; }
  const std::vector<Segment>& segments(EdgeId e) const { return pieces_[graph_->edge_index(e)]; }
  const Rational& start_value(std::size_t edge) const { return start_[edge]; }

  Rational value_at(std::size_t edge, const Rational& x) const;
  Rational value_at(const GraphPoint& p) const;
  // Slope just right of x (just left at the edge end).
  int slope_right(std::size_t edge, const Rational& x) const;
  int slope_left(std::size_t edge, const Rational& x) const;
  int first_slope(EdgeId e) const { return segments(e).front().slope; }
  int last_slope(EdgeId e) const { return segments(e).back().slope; }

  PLFunction operator+(const PLFunction& o) const;
  PLFunction operator+(const Rational& c) const;
  PLFunction operator-(const Rational& c) const { return *this + Rational(-c); }
  PLFunction operator-() const;
  PLFunction operator-(const PLFunction& o) const { return *this + (-o); }

  // Same function, ignoring how segments are split.
  bool same_as(const PLFunction& o) const;
  // Restrictions to γ_k differ by a constant.
  bool same_on_loop(const PLFunction& o, int k) const;

  // Minimum over the whole graph.
  Rational minimum() const;

 private:
  void normalize();
  GraphPtr graph_;
  Rational base_;
  Pieces pieces_;
  std::vector<Rational> start_;
};

// ord_p ψ = −(sum of outgoing slopes at p). Degree is always zero.
GraphDivisor pl_divisor(const PLFunction& psi);
bool in_linear_system(const GraphDivisor& d, const PLFunction& psi);

// Pointwise min_i (ψ_i + b_i), with crossings placed exactly.
PLFunction min_combination(const std::vector<PLFunction>& psi, const std::vector<Rational>& b);

struct CertificateEntry {
  std::size_t index;
  Rational coefficient;
  GraphPoint witness;
  Rational margin;  // gap to the second-smallest value at the witness
};

struct IndependenceCertificate {
  bool ok = false;
  std::vector<CertificateEntry> entries;  // one per function that is uniquely minimal somewhere
  std::vector<std::size_t> failures;       // functions that never are
  Rational min_margin;                     // over entries
  nlohmann::json to_json(const std::vector<std::string>& labels) const;
};

// Exact: each edge is cut at every breakpoint, on each piece the lower envelope
// of the resulting lines is traced, and the best witness per function is the
// midpoint of an envelope piece with the largest gap to the runner-up.
IndependenceCertificate certify_independence(const std::vector<PLFunction>& psi,
                                             const std::vector<Rational>& b);

}  // namespace g13
