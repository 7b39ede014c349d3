#pragma once

#include <optional>
#include <span>
#include <vector>

#include "magneto/group.hpp"
#include "magneto/vertex_set.hpp"

namespace magneto {

/// Edge as supplied by the caller; either orientation is accepted.
struct EdgeSpec {
  int u;
  int v;
  double weight;
  GroupElement signature;  // s_{uv}
};

/// Stored edge, always with u < v; s_{vu} is signature.inverse().
struct Edge {
  int u;
  int v;
  double weight;
  GroupElement signature;
};

struct Incidence {
  int neighbor;
  int edge;
};

/// Per-vertex switching function tau: V1 -> Gamma. Vertices outside the
/// domain are undefined.
class SwitchingAssignment {
 public:
  SwitchingAssignment(Group group, int n);
  static SwitchingAssignment identity(Group group, int n);

  const Group& group() const noexcept { return group_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  void set(int v, const GroupElement& g);
  bool is_defined(int v) const { return defined_.at(v) != 0; }
  /// Throws kIncompleteAssignment when v is undefined.
  const GroupElement& at(int v) const;
  const GroupElement& operator[](int v) const { return at(v); }

  bool covers(VertexSet domain) const;
  bool is_total() const;

  /// Pointwise inverse on the defined vertices.
  SwitchingAssignment inverse() const;

 private:
  Group group_;
  std::vector<GroupElement> values_;
  std::vector<char> defined_;
};

/// Pointwise product (sigma * tau)(u) = sigma(u) tau(u) on common domain.
SwitchingAssignment operator*(const SwitchingAssignment& sigma, const SwitchingAssignment& tau);

/// Weighted undirected simple graph with a Gamma-valued signature and a
/// positive vertex measure. Immutable once built.
class MagneticGraph {
 public:
  /// Validates and canonicalises. An empty `measure` means mu == 1.
  static MagneticGraph build(const Group& group, int n, std::span<const EdgeSpec> edges,
                             std::vector<double> measure = {});

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const Group& group() const noexcept { return group_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const double> measure() const noexcept { return measure_; }
  double measure(int u) const { return measure_.at(u); }
  std::span<const Incidence> neighbors(int u) const { return adjacency_.at(u); }

  /// Weighted degree d_u.
  double degree(int u) const { return degree_.at(u); }

  std::optional<int> find_edge(int u, int v) const;
  bool adjacent(int u, int v) const { return find_edge(u, v).has_value(); }
  /// Oriented signature s_{uv}; kNotACycle if u and v are not adjacent.
  GroupElement signature(int u, int v) const;
  double weight(int u, int v) const;

  /// Neighbour bitmask; only valid for n <= 64.
  VertexSet neighbor_mask(int u) const { return neighbor_mask_.at(u); }
  bool supports_vertex_sets() const noexcept { return n_ <= VertexSet::kMaxVertices; }

 private:
  MagneticGraph(Group group) : group_(group) {}

  Group group_;
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> measure_;
  std::vector<double> degree_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<VertexSet> neighbor_mask_;
};

/// |E(X, X^c)|.
double boundary_measure(const MagneticGraph& g, VertexSet x);
/// vol_mu(X).
double volume(const MagneticGraph& g, VertexSet x);
/// vol_mu(V); defined for any n.
double total_volume(const MagneticGraph& g);
/// d_mu = max_u d_u / mu(u).
double max_mu_degree(const MagneticGraph& g);

/// Edges with both endpoints in x.
std::vector<int> induced_edges(const MagneticGraph& g, VertexSet x);

/// s^tau(u, v) = tau(u) s(u, v) tau(v)^{-1}. tau must be total.
MagneticGraph apply_switching(const MagneticGraph& g, const SwitchingAssignment& tau);

/// Same graph with every signature replaced by 1.
MagneticGraph with_trivial_signature(const MagneticGraph& g);

/// Product of s along the closed walk cycle[0] -> cycle[1] -> ... -> cycle[0].
GroupElement cycle_signature(const MagneticGraph& g, std::span<const int> cycle);

struct BalanceReport {
  bool balanced = false;
  /// Spanning-forest gauge: trivialises every tree edge, roots pinned to 1.
  SwitchingAssignment gauge;
  /// Fundamental cycle with s(C) != 1 when unbalanced.
  std::vector<int> violating_cycle;
};

BalanceReport check_balance(const MagneticGraph& g, double angle_tol = 1e-12);
/// Same test restricted to the subgraph induced by `domain`.
BalanceReport check_balance(const MagneticGraph& g, VertexSet domain, double angle_tol = 1e-12);

/// Signed Cartesian product; vertex (u, v) gets index u * |V2| + v.
MagneticGraph cartesian_product(const MagneticGraph& g1, const MagneticGraph& g2);
/// Left fold of the binary product over `factors` (at least one).
MagneticGraph cartesian_product(std::span<const MagneticGraph> factors);

}  // namespace magneto
