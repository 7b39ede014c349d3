#include "magneto/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>
#include <utility>

namespace magneto {

// ---------------------------------------------------------------------------
// SwitchingAssignment

SwitchingAssignment::SwitchingAssignment(Group group, int n)
    : group_(group),
      values_(static_cast<std::size_t>(n), GroupElement::identity(group)),
      defined_(static_cast<std::size_t>(n), 0) {}

SwitchingAssignment SwitchingAssignment::identity(Group group, int n) {
  SwitchingAssignment tau(group, n);
  std::fill(tau.defined_.begin(), tau.defined_.end(), 1);
  return tau;
}

void SwitchingAssignment::set(int v, const GroupElement& g) {
  if (!(g.group() == group_)) {
    throw Error(ErrorCode::kWrongGroup,
                "switching value in " + g.group().describe() + ", expected " + group_.describe());
  }
  values_.at(v) = g;
  defined_.at(v) = 1;
}

const GroupElement& SwitchingAssignment::at(int v) const {
  if (!defined_.at(v)) {
    throw Error(ErrorCode::kIncompleteAssignment, "switching undefined at vertex " + std::to_string(v));
  }
  return values_[v];
}

bool SwitchingAssignment::covers(VertexSet domain) const {
  bool ok = true;
  domain.for_each([&](int v) { ok = ok && v < size() && defined_[v]; });
  return ok;
}

bool SwitchingAssignment::is_total() const {
  return std::all_of(defined_.begin(), defined_.end(), [](char d) { return d != 0; });
}

SwitchingAssignment SwitchingAssignment::inverse() const {
  SwitchingAssignment out(group_, size());
  for (int v = 0; v < size(); ++v) {
    if (defined_[v]) out.set(v, values_[v].inverse());
  }
  return out;
}

SwitchingAssignment operator*(const SwitchingAssignment& sigma, const SwitchingAssignment& tau) {
  if (!(sigma.group() == tau.group()) || sigma.size() != tau.size()) {
    throw Error(ErrorCode::kWrongGroup, "incompatible switching assignments");
  }
  SwitchingAssignment out(sigma.group(), sigma.size());
  for (int v = 0; v < sigma.size(); ++v) {
    if (sigma.is_defined(v) && tau.is_defined(v)) out.set(v, sigma.at(v) * tau.at(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// MagneticGraph

MagneticGraph MagneticGraph::build(const Group& group, int n, std::span<const EdgeSpec> edges,
                                   std::vector<double> measure) {
  if (n < 0) throw Error(ErrorCode::kVertexOutOfRange, "negative vertex count");
  if (measure.empty()) measure.assign(static_cast<std::size_t>(n), 1.0);
  if (static_cast<int>(measure.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "measure has " + std::to_string(measure.size()) + " entries for " + std::to_string(n) + " vertices");
  }
  for (int u = 0; u < n; ++u) {
    if (!(measure[u] > 0.0) || !std::isfinite(measure[u])) {
      throw Error(ErrorCode::kNonpositiveMeasure, "mu(" + std::to_string(u) + ") must be positive");
    }
  }

  MagneticGraph g(group);
  g.n_ = n;
  g.measure_ = std::move(measure);
  g.edges_.reserve(edges.size());

  std::set<std::pair<int, int>> seen;
  for (const EdgeSpec& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw Error(ErrorCode::kVertexOutOfRange,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw Error(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::kNonpositiveWeight,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") has non-positive weight");
    }
    if (!(e.signature.group() == group)) {
      throw Error(ErrorCode::kMixedGroups,
                  "edge signature in " + e.signature.group().describe() + ", graph group is " + group.describe());
    }
    const int a = std::min(e.u, e.v);
    const int b = std::max(e.u, e.v);
    if (!seen.emplace(a, b).second) {
      throw Error(ErrorCode::kDuplicateEdge, "duplicate edge {" + std::to_string(a) + ", " + std::to_string(b) + "}");
    }
    g.edges_.push_back(Edge{a, b, e.weight, e.u < e.v ? e.signature : e.signature.inverse()});
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });

  g.adjacency_.assign(static_cast<std::size_t>(n), {});
  g.degree_.assign(static_cast<std::size_t>(n), 0.0);
  g.neighbor_mask_.assign(static_cast<std::size_t>(n), VertexSet{});
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges_[i];
    g.adjacency_[e.u].push_back({e.v, i});
    g.adjacency_[e.v].push_back({e.u, i});
    g.degree_[e.u] += e.weight;
    g.degree_[e.v] += e.weight;
    if (n <= VertexSet::kMaxVertices) {
      g.neighbor_mask_[e.u].insert(e.v);
      g.neighbor_mask_[e.v].insert(e.u);
    }
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
  return g;
}

std::optional<int> MagneticGraph::find_edge(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return std::nullopt;
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Incidence& inc, int target) { return inc.neighbor < target; });
  if (it == list.end() || it->neighbor != v) return std::nullopt;
  return it->edge;
}

GroupElement MagneticGraph::signature(int u, int v) const {
  auto idx = find_edge(u, v);
  if (!idx) throw Error(ErrorCode::kNotACycle, "vertices " + std::to_string(u) + " and " + std::to_string(v) + " are not adjacent");
  const Edge& e = edges_[*idx];
  return e.u == u ? e.signature : e.signature.inverse();
}

double MagneticGraph::weight(int u, int v) const {
  auto idx = find_edge(u, v);
  return idx ? edges_[*idx].weight : 0.0;
}

// ---------------------------------------------------------------------------
// Cuts and volumes

namespace {

void require_vertex_sets(const MagneticGraph& g) {
  if (!g.supports_vertex_sets()) {
    throw Error(ErrorCode::kTooManyVertices, "vertex subsets need n <= 64, got " + std::to_string(g.vertex_count()));
  }
}

}  // namespace

double boundary_measure(const MagneticGraph& g, VertexSet x) {
  require_vertex_sets(g);
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    if (x.contains(e.u) != x.contains(e.v)) total += e.weight;
  }
  return total;
}

double volume(const MagneticGraph& g, VertexSet x) {
  require_vertex_sets(g);
  double total = 0.0;
  x.for_each([&](int u) {
    if (u < g.vertex_count()) total += g.measure(u);
  });
  return total;
}

double total_volume(const MagneticGraph& g) {
  double total = 0.0;
  for (double m : g.measure()) total += m;
  return total;
}

double max_mu_degree(const MagneticGraph& g) {
  double best = 0.0;
  for (int u = 0; u < g.vertex_count(); ++u) best = std::max(best, g.degree(u) / g.measure(u));
  return best;
}

std::vector<int> induced_edges(const MagneticGraph& g, VertexSet x) {
  require_vertex_sets(g);
  std::vector<int> out;
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (x.contains(e.u) && x.contains(e.v)) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Switching

namespace {

std::vector<EdgeSpec> edge_specs(const MagneticGraph& g) {
  std::vector<EdgeSpec> out;
  out.reserve(g.edges().size());
  for (const Edge& e : g.edges()) out.push_back({e.u, e.v, e.weight, e.signature});
  return out;
}

}  // namespace

MagneticGraph apply_switching(const MagneticGraph& g, const SwitchingAssignment& tau) {
  if (!(tau.group() == g.group())) {
    throw Error(ErrorCode::kWrongGroup, "switching in " + tau.group().describe() + ", graph in " + g.group().describe());
  }
  if (tau.size() != g.vertex_count() || !tau.is_total()) {
    throw Error(ErrorCode::kIncompleteAssignment, "switching must be defined on every vertex");
  }
  std::vector<EdgeSpec> specs = edge_specs(g);
  for (EdgeSpec& e : specs) e.signature = tau.at(e.u) * e.signature * tau.at(e.v).inverse();
  return MagneticGraph::build(g.group(), g.vertex_count(), specs, std::vector<double>(g.measure().begin(), g.measure().end()));
}

MagneticGraph with_trivial_signature(const MagneticGraph& g) {
  std::vector<EdgeSpec> specs = edge_specs(g);
  for (EdgeSpec& e : specs) e.signature = GroupElement::identity(g.group());
  return MagneticGraph::build(g.group(), g.vertex_count(), specs, std::vector<double>(g.measure().begin(), g.measure().end()));
}

GroupElement cycle_signature(const MagneticGraph& g, std::span<const int> cycle) {
  if (cycle.size() < 3) throw Error(ErrorCode::kNotACycle, "a cycle needs at least three edges");
  std::set<int> used;
  GroupElement product = GroupElement::identity(g.group());
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int u = cycle[i];
    const int v = cycle[(i + 1) % cycle.size()];
    auto idx = g.find_edge(u, v);
    if (!idx) {
      throw Error(ErrorCode::kNotACycle, "no edge between " + std::to_string(u) + " and " + std::to_string(v));
    }
    if (!used.insert(*idx).second) throw Error(ErrorCode::kNotACycle, "edge repeated in cycle");
    product = product * g.signature(u, v);
  }
  return product;
}

// ---------------------------------------------------------------------------
// Balance

namespace {

BalanceReport balance_on(const MagneticGraph& g, const std::vector<char>& member, double angle_tol) {
  const int n = g.vertex_count();
  BalanceReport report{true, SwitchingAssignment(g.group(), n), {}};
  std::vector<int> parent(n, -1);
  std::vector<int> parent_edge(n, -1);
  std::vector<int> depth(n, 0);
  std::vector<char> visited(n, 0);

  for (int root = 0; root < n; ++root) {
    if (!member[root] || visited[root]) continue;
    visited[root] = 1;
    report.gauge.set(root, GroupElement::identity(g.group()));
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const Incidence& inc : g.neighbors(u)) {
        const int v = inc.neighbor;
        if (!member[v] || visited[v]) continue;
        visited[v] = 1;
        parent[v] = u;
        parent_edge[v] = inc.edge;
        depth[v] = depth[u] + 1;
        // tau(u) s(u,v) tau(v)^{-1} = 1
        report.gauge.set(v, report.gauge.at(u) * g.signature(u, v));
        queue.push_back(v);
      }
    }
  }

  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (!member[e.u] || !member[e.v]) continue;
    if (parent_edge[e.v] == i || parent_edge[e.u] == i) continue;
    GroupElement switched = report.gauge.at(e.u) * e.signature * report.gauge.at(e.v).inverse();
    if (switched.is_identity(angle_tol)) continue;

    report.balanced = false;
    std::vector<int> up_u{e.u};
    std::vector<int> up_v{e.v};
    int a = e.u;
    int b = e.v;
    while (depth[a] > depth[b]) up_u.push_back(a = parent[a]);
    while (depth[b] > depth[a]) up_v.push_back(b = parent[b]);
    while (a != b) {
      up_u.push_back(a = parent[a]);
      up_v.push_back(b = parent[b]);
    }
    up_v.pop_back();  // lowest common ancestor already in up_u
    report.violating_cycle = up_u;
    report.violating_cycle.insert(report.violating_cycle.end(), up_v.rbegin(), up_v.rend());
    break;
  }
  return report;
}

}  // namespace

BalanceReport check_balance(const MagneticGraph& g, double angle_tol) {
  return balance_on(g, std::vector<char>(static_cast<std::size_t>(g.vertex_count()), 1), angle_tol);
}

BalanceReport check_balance(const MagneticGraph& g, VertexSet domain, double angle_tol) {
  require_vertex_sets(g);
  std::vector<char> member(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int u = 0; u < g.vertex_count(); ++u) member[u] = domain.contains(u) ? 1 : 0;
  return balance_on(g, member, angle_tol);
}

// ---------------------------------------------------------------------------
// Products

MagneticGraph cartesian_product(const MagneticGraph& g1, const MagneticGraph& g2) {
  if (!(g1.group() == g2.group())) {
    throw Error(ErrorCode::kMixedGroups, "product of graphs over " + g1.group().describe() + " and " + g2.group().describe());
  }
  const int n1 = g1.vertex_count();
  const int n2 = g2.vertex_count();
  auto index = [n2](int u, int v) { return u * n2 + v; };

  std::vector<EdgeSpec> specs;
  specs.reserve(static_cast<std::size_t>(n1) * g2.edge_count() + static_cast<std::size_t>(n2) * g1.edge_count());
  for (int u = 0; u < n1; ++u) {
    for (const Edge& e : g2.edges()) {
      specs.push_back({index(u, e.u), index(u, e.v), e.weight * g1.measure(u), e.signature});
    }
  }
  for (int v = 0; v < n2; ++v) {
    for (const Edge& e : g1.edges()) {
      specs.push_back({index(e.u, v), index(e.v, v), e.weight * g2.measure(v), e.signature});
    }
  }
  std::vector<double> measure(static_cast<std::size_t>(n1) * n2);
  for (int u = 0; u < n1; ++u) {
    for (int v = 0; v < n2; ++v) measure[index(u, v)] = g1.measure(u) * g2.measure(v);
  }
  return MagneticGraph::build(g1.group(), n1 * n2, specs, std::move(measure));
}

MagneticGraph cartesian_product(std::span<const MagneticGraph> factors) {
  if (factors.empty()) throw Error(ErrorCode::kDimensionMismatch, "product of zero graphs");
  MagneticGraph result = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) result = cartesian_product(result, factors[i]);
  return result;
}

}  // namespace magneto
