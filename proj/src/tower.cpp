#include "bgpa/tower.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bgpa/generators.hpp"

namespace bgpa {

namespace {

AlgebraElement random_element(const FixedBasis& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  AlgebraElement a(basis.algebra(), basis.level(), basis.sign());
  for (int k = 0; k < basis.dim(); ++k) a += basis.element(k) * Scalar(normal(rng), normal(rng));
  return a;
}

void require_star_closed(const FixedBasis& basis, std::mt19937_64& rng) {
  for (int trial = 0; trial < 2; ++trial) {
    const AlgebraElement a = random_element(basis, rng);
    const AlgebraElement b = random_element(basis, rng);
    const AlgebraElement ab = a * b;
    const double scale = std::max(1.0, std::sqrt(std::abs(trace(adjoint(ab) * ab))));
    if (basis.project(ab).second > 1e-7 * scale || basis.project(adjoint(a)).second > 1e-7 * scale) {
      throw Error(Error::Kind::NotClosed, "fixed span is not closed under multiplication and adjoint");
    }
  }
}

AlgebraElement casimir(const std::vector<AlgebraElement>& elements, const AlgebraElement& x) {
  AlgebraElement out(x.algebra_ptr(), x.level(), x.sign());
  for (const AlgebraElement& b : elements) out += b * x * adjoint(b);
  return out;
}

// Spectral projections of a self-adjoint element, one per eigenvalue cluster.
std::vector<AlgebraElement> spectral_projections(const AlgebraElement& c) {
  struct Eig {
    double value;
    int block;
    Eigen::Index column;
  };
  std::vector<Eig> eigs;
  std::vector<Matrix> vectors(c.basis().num_blocks());
  for (int k = 0; k < c.basis().num_blocks(); ++k) {
    const auto n = static_cast<Eigen::Index>(c.basis().blocks()[k].paths.size());
    const Matrix m = c.has_block(k) ? Matrix(c.block(k)) : Matrix(Matrix::Zero(n, n));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    vectors[k] = solver.eigenvectors();
    for (Eigen::Index i = 0; i < n; ++i) eigs.push_back({solver.eigenvalues()(i), k, i});
  }
  std::sort(eigs.begin(), eigs.end(), [](const Eig& a, const Eig& b) { return a.value < b.value; });
  double scale = 0.0;
  for (const Eig& e : eigs) scale = std::max(scale, std::abs(e.value));
  std::vector<AlgebraElement> out;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (i == 0 || eigs[i].value - eigs[i - 1].value > kClusterGap * scale) {
      out.emplace_back(c.algebra_ptr(), c.level(), c.sign());
    }
    const Vector& v = vectors[eigs[i].block].col(eigs[i].column);
    out.back().block_mut(eigs[i].block) += v * v.adjoint();
  }
  return out;
}

int first_support(const AlgebraElement& z) {
  for (int p = 0; p < z.basis().size(); ++p) {
    if (z(p, p).real() > 1e-8) return p;
  }
  return z.basis().size();
}

}  // namespace

AlgebraDecomposition decompose_algebra(const FixedBasis& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AlgebraDecomposition out{basis.level(), basis.sign(), basis.dim(), {}};
  if (basis.dim() == 0) return out;
  require_star_closed(basis, rng);
  const std::vector<AlgebraElement> elements = basis.elements();
  const AlgebraElement one = AlgebraElement::identity(basis.algebra(), basis.level(), basis.sign());
  const AlgebraElement c_one = casimir(elements, one);

  std::vector<std::vector<AlgebraElement>> runs;
  for (int run = 0; run < 2; ++run) {
    const AlgebraElement a = random_element(basis, rng);
    runs.push_back(spectral_projections(casimir(elements, a * adjoint(a))));
  }
  if (runs[0].size() != runs[1].size()) {
    throw Error(Error::Kind::Precondition, "central decompositions from two random elements disagree");
  }
  for (const AlgebraElement& z : runs[0]) {
    const bool matched = std::any_of(runs[1].begin(), runs[1].end(),
                                     [&](const AlgebraElement& w) { return max_difference(z, w) < 1e-6; });
    if (!matched) throw Error(Error::Kind::Precondition, "central decompositions from two random elements disagree");
  }

  int total = 0;
  for (AlgebraElement& z : runs[0]) {
    const double d2 = trace_of_product(c_one, z).real();
    const int d = static_cast<int>(std::lround(std::sqrt(std::max(d2, 0.0))));
    if (d == 0 || std::abs(d2 - d * d) > 1e-6 * std::max(1.0, d2)) {
      throw Error(Error::Kind::NotClosed, "block dimension is not an integer (" + std::to_string(d2) + ")");
    }
    total += d * d;
    const double tz = trace(z).real();
    out.blocks.push_back({std::move(z), d, tz});
  }
  if (total != basis.dim()) {
    throw Error(Error::Kind::NotClosed, "block dimensions do not account for the whole algebra");
  }
  std::stable_sort(out.blocks.begin(), out.blocks.end(), [](const SimpleBlock& a, const SimpleBlock& b) {
    const int fa = first_support(a.central), fb = first_support(b.central);
    if (fa != fb) return fa < fb;
    return a.trace > b.trace;
  });
  return out;
}

Eigen::MatrixXi inclusion_matrix(const AlgebraDecomposition& lower, const AlgebraDecomposition& upper) {
  if (upper.level != lower.level + 1 || upper.sign != lower.sign) {
    throw Error(Error::Kind::InvalidArgument, "inclusion needs consecutive levels of one sign");
  }
  const auto rows = static_cast<Eigen::Index>(lower.blocks.size());
  const auto cols = static_cast<Eigen::Index>(upper.blocks.size());
  Eigen::MatrixXi out = Eigen::MatrixXi::Zero(rows, cols);
  std::vector<double> column_dims(cols, 0.0);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const SimpleBlock& lo = lower.blocks[i];
    const AlgebraElement r = right_embed(lo.central);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const SimpleBlock& up = upper.blocks[j];
      const double value = up.dim * trace_of_product(r, up.central).real() / (lo.dim * up.trace);
      const long mult = std::lround(value);
      if (std::abs(value - mult) > 1e-6) {
        throw Error(Error::Kind::NotClosed, "embedding multiplicity is not an integer (" + std::to_string(value) + ")");
      }
      out(i, j) = static_cast<int>(mult);
      column_dims[j] += mult * lo.dim;
    }
  }
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (static_cast<int>(column_dims[j]) != upper.blocks[j].dim) {
      throw Error(Error::Kind::NotClosed, "embedded blocks do not fill an upper block");
    }
  }
  return out;
}

AlgebraElement jones_projection(const AlgebraPtr& algebra, int n, Sign sign) {
  if (n < 1) throw Error(Error::Kind::InvalidArgument, "Jones projections start at n = 1");
  return tl_at(algebra, n + 1, sign, n) * Scalar(1.0 / algebra->modulus());
}

std::vector<long long> PrincipalGraph::walks(int n) const {
  std::vector<long long> w(nodes.size(), 0);
  w[star] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<long long> next(nodes.size(), 0);
    for (const Link& l : links) {
      next[l.b] += l.multiplicity * w[l.a];
      next[l.a] += l.multiplicity * w[l.b];
    }
    w = std::move(next);
  }
  return w;
}

long long PrincipalGraph::walk_dimension(int n) const {
  long long total = 0;
  for (long long x : walks(n)) total += x * x;
  return total;
}

int PrincipalGraph::max_depth() const {
  int d = 0;
  for (const Node& node : nodes) d = std::max(d, node.depth);
  return d;
}

PrincipalGraphResult principal_graph(const FixedTower& tower, int depth, double tol) {
  if (depth > tower.depth()) throw Error(Error::Kind::InvalidArgument, "depth exceeds the computed tower");
  if (depth < 0) throw Error(Error::Kind::InvalidArgument, "depth must be nonnegative");
  PrincipalGraphResult out;
  for (int n = 0; n <= depth; ++n) {
    out.levels.push_back(decompose_algebra(tower.plus[n]));
    out.fixed_dims.push_back(tower.plus[n].dim());
  }
  for (int n = 0; n < depth; ++n) out.inclusions.push_back(inclusion_matrix(out.levels[n], out.levels[n + 1]));

  PrincipalGraph& pg = out.graph;
  std::vector<std::vector<int>> node_of(depth + 1);
  std::map<std::pair<int, int>, int> links;
  auto add_new = [&](int n, int j) {
    const int id = static_cast<int>(pg.nodes.size());
    int count = 0;
    for (const auto& node : pg.nodes) count += node.depth == n;
    pg.nodes.push_back({n == 0 && count == 0 ? "*" : std::to_string(n) + "." + std::to_string(count), n});
    node_of[n][j] = id;
    if (n > 0) {
      for (Eigen::Index i = 0; i < out.inclusions[n - 1].rows(); ++i) {
        const int m = out.inclusions[n - 1](i, j);
        if (m > 0) links[{node_of[n - 1][i], id}] += m;
      }
    }
  };
  for (int n = 0; n <= depth; ++n) {
    const auto& blocks = out.levels[n].blocks;
    node_of[n].assign(blocks.size(), -1);
    if (n < 2) {
      for (std::size_t j = 0; j < blocks.size(); ++j) add_new(n, static_cast<int>(j));
      continue;
    }
    const AlgebraElement e = jones_projection(tower.algebra, n - 1, Sign::Plus);
    std::vector<AlgebraElement> lifted;
    for (const auto& lo : out.levels[n - 2].blocks) lifted.push_back(right_embed(right_embed(lo.central)));
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const AlgebraElement ze = blocks[j].central * e;
      const double old_weight = trace(ze).real();
      if (old_weight <= tol * blocks[j].trace) {
        add_new(n, static_cast<int>(j));
        continue;
      }
      int best = -1;
      double best_weight = 0.0;
      for (std::size_t k = 0; k < lifted.size(); ++k) {
        const double w = trace_of_product(lifted[k], ze).real();
        if (w > best_weight) {
          best_weight = w;
          best = static_cast<int>(k);
        }
      }
      if (best < 0) throw Error(Error::Kind::NotClosed, "old block has no ancestor two levels down");
      node_of[n][j] = node_of[n - 2][best];
    }
  }
  for (const auto& [ends, m] : links) pg.links.push_back({ends.first, ends.second, m});
  for (int n = 0; n <= depth; ++n) out.walk_dims.push_back(pg.walk_dimension(n));
  out.consistent = true;
  for (int n = 0; n <= depth; ++n) out.consistent = out.consistent && out.walk_dims[n] == out.fixed_dims[n];
  return out;
}

PrincipalGraph cube_s4_reference_graph() {
  PrincipalGraph g;
  g.nodes = {{"A1", 0}, {"B", 1}, {"A2", 2}, {"A3", 2}, {"C", 2}, {"D1", 3}, {"D2", 3}, {"D3", 3}};
  g.links = {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {1, 4, 2}, {4, 5, 1}, {4, 6, 1}, {4, 7, 1}};
  g.star = 0;
  return g;
}

namespace {

PrincipalGraph truncate(const PrincipalGraph& g, int depth) {
  PrincipalGraph out;
  std::vector<int> index(g.nodes.size(), -1);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i].depth > depth) continue;
    index[i] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(g.nodes[i]);
  }
  for (const auto& l : g.links) {
    if (index[l.a] >= 0 && index[l.b] >= 0) out.links.push_back({index[l.a], index[l.b], l.multiplicity});
  }
  out.star = index[g.star];
  return out;
}

bool pointed_isomorphic(const PrincipalGraph& a, const PrincipalGraph& b) {
  const int n = static_cast<int>(a.nodes.size());
  if (n != static_cast<int>(b.nodes.size()) || a.links.size() != b.links.size()) return false;
  auto mult_matrix = [n](const PrincipalGraph& g) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& l : g.links) {
      m[l.a][l.b] += l.multiplicity;
      m[l.b][l.a] += l.multiplicity;
    }
    return m;
  };
  const auto ma = mult_matrix(a), mb = mult_matrix(b);
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  auto search = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || a.nodes[i].depth != b.nodes[j].depth) continue;
      if ((i == a.star) != (j == b.star)) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) ok = ma[i][k] == mb[j][map[k]];
      if (!ok) continue;
      map[i] = j;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    map[i] = -1;
    return false;
  };
  return search(search, 0);
}

}  // namespace

GraphComparison compare_principal_graphs(const PrincipalGraph& computed, const PrincipalGraph& reference, int depth) {
  GraphComparison out;
  for (int n = 0; n <= depth; ++n) {
    out.computed_dims.push_back(computed.walk_dimension(n));
    out.reference_dims.push_back(reference.walk_dimension(n));
    if (out.computed_dims.back() != out.reference_dims.back()) out.differing_levels.push_back(n);
  }
  out.isomorphic = pointed_isomorphic(truncate(computed, depth), truncate(reference, depth));
  std::ostringstream os;
  if (out.isomorphic) {
    os << "agree up to depth " << depth;
  } else {
    os << "differ up to depth " << depth;
    for (int n : out.differing_levels) {
      os << "; level " << n << ": computed dim " << out.computed_dims[n] << ", reference implies "
         << out.reference_dims[n];
    }
  }
  out.summary = os.str();
  return out;
}

std::string to_dot(const PrincipalGraph& g) {
  std::ostringstream os;
  os << "graph principal {\n";
  os << "  node [shape=circle, label=\"\", width=0.2];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const bool even = g.nodes[i].depth % 2 == 0;
    os << "  n" << i << " [style=filled, fillcolor=" << (even ? "black" : "white");
    os << ", tooltip=\"" << g.nodes[i].name << "\"";
    if (static_cast<int>(i) == g.star) os << ", xlabel=\"*\"";
    os << "];\n";
  }
  for (const auto& l : g.links) {
    for (int k = 0; k < l.multiplicity; ++k) os << "  n" << l.a << " -- n" << l.b << ";\n";
  }
  os << "}\n";
  return os.str();
}

long long diagonal_dim_oracle(const FiniteGroup& g, const std::vector<int>& generators, int n) {
  if (n < 0) throw Error(Error::Kind::InvalidArgument, "n must be nonnegative");
  std::vector<int> letters{g.identity()};
  letters.insert(letters.end(), generators.begin(), generators.end());
  for (int x : letters) {
    if (x < 0 || x >= g.order()) throw Error(Error::Kind::InvalidArgument, "generator outside the group");
  }
  // ways[x]: number of prefixes a_1 a_2^{-1} ... with product x.
  std::vector<long long> ways(g.order(), 0);
  ways[g.identity()] = 1;
  for (int pair = 0; pair < n; ++pair) {
    std::vector<long long> next(g.order(), 0);
    for (int x = 0; x < g.order(); ++x) {
      if (ways[x] == 0) continue;
      for (int a : letters) {
        for (int b : letters) next[g.mul(g.mul(x, a), g.inv(b))] += ways[x];
      }
    }
    ways = std::move(next);
  }
  return ways[g.identity()];
}

WordOracle free_product_oracle(const FiniteGroup& h, const FiniteGroup& k) {
  return [h, k](const std::vector<Letter>& word) {
    std::vector<Letter> stack;
    for (const Letter& l : word) {
      const FiniteGroup& f = l.from_k ? k : h;
      if (l.element == f.identity()) continue;
      if (!stack.empty() && stack.back().from_k == l.from_k) {
        const int merged = f.mul(stack.back().element, l.element);
        stack.pop_back();
        if (merged != f.identity()) stack.push_back({l.from_k, merged});
      } else {
        stack.push_back(l);
      }
    }
    return stack.empty();
  };
}

WordOracle ambient_group_oracle(const FiniteGroup& g, const std::vector<int>& h_embed, const std::vector<int>& k_embed) {
  return [g, h_embed, k_embed](const std::vector<Letter>& word) {
    int x = g.identity();
    for (const Letter& l : word) x = g.mul(x, l.from_k ? k_embed.at(l.element) : h_embed.at(l.element));
    return x == g.identity();
  };
}

long long bh_dim_oracle(const FiniteGroup& h, const FiniteGroup& k, const WordOracle& trivial, int n,
                        long long max_tuples) {
  if (n < 0) throw Error(Error::Kind::InvalidArgument, "n must be nonnegative");
  double tuples = std::pow(static_cast<double>(h.order()) * k.order(), n);
  if (tuples > static_cast<double>(max_tuples)) {
    throw Error(Error::Kind::BoundExceeded, "too many words for the oracle");
  }
  std::vector<int> digits(2 * n, 0);
  long long count = 0;
  std::vector<Letter> word(2 * n);
  while (true) {
    for (int i = 0; i < 2 * n; ++i) word[i] = {i % 2 == 0, digits[i]};
    if (trivial(word)) ++count;
    int i = 0;
    for (; i < 2 * n; ++i) {
      const int base = i % 2 == 0 ? k.order() : h.order();
      if (++digits[i] < base) break;
      digits[i] = 0;
    }
    if (i == 2 * n) break;
  }
  return count;
}

}  // namespace bgpa
