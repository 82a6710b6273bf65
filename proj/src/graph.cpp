#include "bgpa/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace bgpa {

std::string_view to_string(Error::Kind kind) {
  switch (kind) {
    case Error::Kind::InvalidGraph: return "invalid_graph";
    case Error::Kind::Disconnected: return "disconnected";
    case Error::Kind::InvalidArgument: return "invalid_argument";
    case Error::Kind::InvalidAutomorphism: return "invalid_automorphism";
    case Error::Kind::NotClosed: return "not_closed";
    case Error::Kind::BoundExceeded: return "bound_exceeded";
    case Error::Kind::Precondition: return "precondition";
    case Error::Kind::Io: return "io";
  }
  return "unknown";
}

namespace {

long long pair_key(int even, int odd) { return (static_cast<long long>(even) << 32) | odd; }

}  // namespace

BipartiteGraph BipartiteGraph::build(std::vector<VertexSpec> vertices, const std::vector<EdgeSpec>& edges) {
  if (vertices.empty()) throw Error(Error::Kind::InvalidGraph, "graph has no vertices");
  BipartiteGraph g;
  for (auto& spec : vertices) {
    if (g.index_.count(spec.id)) throw Error(Error::Kind::InvalidGraph, "duplicate vertex id '" + spec.id + "'");
    const int v = static_cast<int>(g.vertices_.size());
    g.index_.emplace(spec.id, v);
    auto& bucket = spec.parity == Parity::Even ? g.even_ : g.odd_;
    g.rank_.push_back(static_cast<int>(bucket.size()));
    bucket.push_back(v);
    g.vertices_.push_back(Vertex{std::move(spec.id), spec.parity});
  }
  g.incident_.resize(g.vertices_.size());
  for (const auto& spec : edges) {
    const auto a = g.find(spec.even);
    const auto b = g.find(spec.odd);
    if (!a || !b) {
      throw Error(Error::Kind::InvalidGraph, "edge references unknown vertex '" + (a ? spec.odd : spec.even) + "'");
    }
    if (g.parity(*a) != Parity::Even || g.parity(*b) != Parity::Odd) {
      throw Error(Error::Kind::InvalidGraph,
                  "edge " + spec.even + "-" + spec.odd + " does not join an even vertex to an odd vertex");
    }
    const long long key = pair_key(*a, *b);
    auto it = g.bundle_index_.find(key);
    if (it == g.bundle_index_.end()) {
      it = g.bundle_index_.emplace(key, g.num_bundles()).first;
      g.bundles_.push_back(Bundle{*a, *b, {}});
    }
    Bundle& bundle = g.bundles_[it->second];
    const int e = g.num_edges();
    bundle.edges.push_back(e);
    g.edges_.push_back(Edge{*a, *b, static_cast<int>(bundle.edges.size()), it->second});
    g.incident_[*a].push_back(e);
    g.incident_[*b].push_back(e);
  }
  return g;
}

int BipartiteGraph::other_end(int e, int v) const {
  const Edge& edge = edges_.at(e);
  if (edge.even == v) return edge.odd;
  if (edge.odd == v) return edge.even;
  throw Error(Error::Kind::InvalidArgument, "vertex is not an endpoint of edge");
}

std::optional<int> BipartiteGraph::bundle_between(int v, int w) const {
  if (parity(v) == parity(w)) return std::nullopt;
  const int even = parity(v) == Parity::Even ? v : w;
  const int odd = parity(v) == Parity::Even ? w : v;
  auto it = bundle_index_.find(pair_key(even, odd));
  if (it == bundle_index_.end()) return std::nullopt;
  return it->second;
}

int BipartiteGraph::multiplicity(int v, int w) const {
  const auto b = bundle_between(v, w);
  return b ? static_cast<int>(bundles_[*b].edges.size()) : 0;
}

std::optional<int> BipartiteGraph::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int BipartiteGraph::index_of(const std::string& id) const {
  if (auto v = find(id)) return *v;
  throw Error(Error::Kind::InvalidArgument, "unknown vertex '" + id + "'");
}

Eigen::MatrixXd BipartiteGraph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_vertices(), num_vertices());
  for (const auto& e : edges_) {
    a(e.even, e.odd) += 1.0;
    a(e.odd, e.even) += 1.0;
  }
  return a;
}

std::vector<std::vector<int>> BipartiteGraph::components() const {
  std::vector<int> label(vertices_.size(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < num_vertices(); ++s) {
    if (label[s] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<int> q;
    q.push(s);
    label[s] = c;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      out[c].push_back(v);
      for (int e : incident_[v]) {
        const int w = other_end(e, v);
        if (label[w] < 0) {
          label[w] = c;
          q.push(w);
        }
      }
    }
    std::sort(out[c].begin(), out[c].end());
  }
  return out;
}

bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  for (int v = 0; v < a.num_vertices(); ++v) {
    if (a.vertex(v).id != b.vertex(v).id || a.vertex(v).parity != b.vertex(v).parity) return false;
  }
  for (int e = 0; e < a.num_edges(); ++e) {
    if (a.edge(e).even != b.edge(e).even || a.edge(e).odd != b.edge(e).odd) return false;
  }
  return true;
}

SpinVector perron_spin(const BipartiteGraph& g) {
  if (g.num_edges() == 0) throw Error(Error::Kind::InvalidGraph, "perron spin needs at least one edge");
  const auto comps = g.components();
  if (comps.size() > 1) {
    std::ostringstream msg;
    msg << "graph is disconnected; components:";
    for (const auto& c : comps) {
      msg << " {";
      for (std::size_t i = 0; i < c.size(); ++i) msg << (i ? "," : "") << g.vertex(c[i]).id;
      msg << "}";
    }
    throw Error(Error::Kind::Disconnected, msg.str());
  }
  // The connection matrix has a symmetric spectrum on bipartite graphs, so
  // iterate with A + I to separate the Perron root from its negative.
  const Eigen::MatrixXd a = g.adjacency();
  const Eigen::MatrixXd shifted = a + Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::VectorXd x = Eigen::VectorXd::Ones(a.rows());
  x.normalize();
  constexpr int kMaxIterations = 2'000'000;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXd y = shifted * x;
    y.normalize();
    const double change = (y - x).lpNorm<Eigen::Infinity>();
    x = std::move(y);
    if (change < kPowerIterationThreshold) break;
  }
  const double delta = x.dot(a * x) / x.squaredNorm();
  const double base = x(g.vertices_of(Parity::Even).empty() ? 0 : g.vertices_of(Parity::Even).front());
  SpinVector spin;
  spin.mu.resize(x.size());
  for (int v = 0; v < x.size(); ++v) spin.mu[v] = std::sqrt(x(v) / base);
  spin.modulus = delta;
  return spin;
}

ModulusCheck check_modulus(const BipartiteGraph& g, const std::vector<double>& mu, double tol) {
  if (static_cast<int>(mu.size()) != g.num_vertices()) {
    throw Error(Error::Kind::InvalidArgument, "spin vector size does not match graph");
  }
  ModulusCheck out;
  std::vector<double> lhs(mu.size(), 0.0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!(mu[v] > 0.0)) throw Error(Error::Kind::InvalidArgument, "spin must be strictly positive");
    for (int e : g.incident(v)) {
      const double m = mu[g.other_end(e, v)];
      lhs[v] += m * m;
    }
    out.ratios.push_back(lhs[v] / (mu[v] * mu[v]));
  }
  // Consensus value: the largest cluster of mutually close ratios (ties to the smaller value).
  std::vector<double> sorted = out.ratios;
  std::sort(sorted.begin(), sorted.end());
  std::size_t best_start = 0, best_size = 0;
  for (std::size_t i = 0, j = 0; i < sorted.size(); i = j) {
    j = i;
    while (j < sorted.size() && sorted[j] - sorted[i] <= tol * std::max(1.0, std::abs(sorted[i]))) ++j;
    if (j - i > best_size) {
      best_size = j - i;
      best_start = i;
    }
  }
  out.delta = sorted[best_start];
  for (int v = 0; v < g.num_vertices(); ++v) {
    const double rhs = out.delta * mu[v] * mu[v];
    if (std::abs(out.ratios[v] - out.delta) > tol * std::max(1.0, std::abs(out.delta))) {
      out.violations.push_back(ModulusViolation{v, lhs[v], rhs});
    }
  }
  out.ok = out.violations.empty();
  return out;
}

Sign sign_of(const BipartiteGraph& g, const PathRef& p) { return sign_of(g.parity(p.source)); }

std::vector<int> vertices_along(const BipartiteGraph& g, const PathRef& p) {
  std::vector<int> out{p.source};
  for (const Step& s : p.steps) out.push_back(g.other_end(s.edge, out.back()));
  return out;
}

PathRef make_path(const BipartiteGraph& g, int source, const std::vector<int>& edges) {
  PathRef p{source, source, {}};
  for (int e : edges) {
    const Edge& edge = g.edge(e);
    if (edge.even == p.target) {
      p.steps.push_back({e, true});
      p.target = edge.odd;
    } else if (edge.odd == p.target) {
      p.steps.push_back({e, false});
      p.target = edge.even;
    } else {
      throw Error(Error::Kind::InvalidArgument, "edges do not form a path");
    }
  }
  return p;
}

bool is_valid_path(const BipartiteGraph& g, const PathRef& p) {
  if (p.source < 0 || p.source >= g.num_vertices()) return false;
  int at = p.source;
  for (const Step& s : p.steps) {
    if (s.edge < 0 || s.edge >= g.num_edges()) return false;
    const Edge& e = g.edge(s.edge);
    if (s.forward ? e.even != at : e.odd != at) return false;
    at = s.forward ? e.odd : e.even;
  }
  return at == p.target;
}

std::optional<PathRef> concat(const PathRef& p, const PathRef& q) {
  if (p.target != q.source) return std::nullopt;
  PathRef r = p;
  r.target = q.target;
  r.steps.insert(r.steps.end(), q.steps.begin(), q.steps.end());
  return r;
}

PathRef reverse_path(const PathRef& p) {
  PathRef r{p.target, p.source, {}};
  r.steps.reserve(p.steps.size());
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) r.steps.push_back({it->edge, !it->forward});
  return r;
}

std::vector<Step> LoopRef::cyclic() const {
  std::vector<Step> out = pi.steps;
  const PathRef back = reverse_path(eps);
  out.insert(out.end(), back.steps.begin(), back.steps.end());
  return out;
}

LoopRef LoopRef::from_cyclic(const BipartiteGraph& g, int base, const std::vector<Step>& steps) {
  if (steps.size() % 2 != 0) throw Error(Error::Kind::InvalidArgument, "loop must have even length");
  const std::size_t n = steps.size() / 2;
  std::vector<int> first, second;
  for (std::size_t i = 0; i < n; ++i) first.push_back(steps[i].edge);
  for (std::size_t i = 0; i < n; ++i) second.push_back(steps[steps.size() - 1 - i].edge);
  LoopRef loop{make_path(g, base, first), make_path(g, base, second), sign_of(g.parity(base))};
  if (loop.pi.target != loop.eps.target) throw Error(Error::Kind::InvalidArgument, "steps do not close a loop");
  return loop;
}

std::vector<PathRef> enumerate_paths(const BipartiteGraph& g, int n, Sign sign) {
  if (n < 0) throw Error(Error::Kind::InvalidArgument, "path length must be nonnegative");
  std::vector<PathRef> current;
  for (int v : g.vertices_of(parity_of(sign))) current.push_back(PathRef{v, v, {}});
  for (int k = 0; k < n; ++k) {
    std::vector<PathRef> next;
    for (const PathRef& p : current) {
      for (int e : g.incident(p.target)) {
        PathRef q = p;
        q.steps.push_back({e, g.parity(p.target) == Parity::Even});
        q.target = g.other_end(e, p.target);
        next.push_back(std::move(q));
      }
    }
    current = std::move(next);
  }
  return current;
}

std::vector<LoopRef> enumerate_loops(const BipartiteGraph& g, int n, Sign sign) {
  const auto paths = enumerate_paths(g, n, sign);
  std::map<std::pair<int, int>, std::vector<int>> by_ends;
  for (int i = 0; i < static_cast<int>(paths.size()); ++i) by_ends[{paths[i].source, paths[i].target}].push_back(i);
  std::vector<LoopRef> out;
  for (const PathRef& p : paths) {
    for (int j : by_ends[{p.source, p.target}]) out.push_back(LoopRef{p, paths[j], sign});
  }
  return out;
}

CycleSpace cycle_rank(const BipartiteGraph& g) {
  const auto comps = g.components();
  if (comps.size() != 1) throw Error(Error::Kind::Disconnected, "cycle rank needs a connected graph");
  CycleSpace out;
  out.rank = g.num_edges() - g.num_vertices() + 1;
  out.tree_edge.assign(g.num_edges(), false);
  std::vector<int> parent_edge(g.num_vertices(), -1);
  std::vector<int> depth(g.num_vertices(), -1);
  std::queue<int> q;
  q.push(0);
  depth[0] = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int e : g.incident(v)) {
      const int w = g.other_end(e, v);
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        parent_edge[w] = e;
        out.tree_edge[e] = true;
        q.push(w);
      }
    }
  }
  auto step_from = [&](int e, int at) { return Step{e, g.parity(at) == Parity::Even}; };
  for (int e = 0; e < g.num_edges(); ++e) {
    if (out.tree_edge[e]) continue;
    const Edge& edge = g.edge(e);
    Cycle c{e, edge.even, {}};
    c.steps.push_back({e, true});
    // Tree path odd end -> even end through the lowest common ancestor.
    std::vector<Step> up, down;
    int a = edge.odd, b = edge.even;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        const int pe = parent_edge[a];
        up.push_back(step_from(pe, a));
        a = g.other_end(pe, a);
      } else {
        const int pe = parent_edge[b];
        const int pb = g.other_end(pe, b);
        down.push_back(step_from(pe, pb));
        b = pb;
      }
    }
    c.steps.insert(c.steps.end(), up.begin(), up.end());
    c.steps.insert(c.steps.end(), down.rbegin(), down.rend());
    out.basis.push_back(std::move(c));
  }
  return out;
}

}  // namespace bgpa
