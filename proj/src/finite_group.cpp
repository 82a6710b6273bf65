#include "bgpa/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bgpa/core.hpp"

namespace bgpa {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names)) {
  const int n = order();
  if (n == 0) throw Error(Error::Kind::InvalidArgument, "group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error(Error::Kind::InvalidArgument, "group table is not square");
    std::vector<bool> seen(n, false);
    for (int x : row) {
      if (x < 0 || x >= n || seen[x]) throw Error(Error::Kind::InvalidArgument, "group table row is not a permutation");
      seen[x] = true;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::vector<bool> seen(n, false);
    for (int a = 0; a < n; ++a) {
      if (seen[table_[a][b]]) throw Error(Error::Kind::InvalidArgument, "group table column is not a permutation");
      seen[table_[a][b]] = true;
    }
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error(Error::Kind::InvalidArgument, "group table has no identity");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw Error(Error::Kind::InvalidArgument, "group table is not associative");
        }
      }
    }
  }
  inverse_.resize(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table_[a][b] == identity_) inverse_[a] = b;
    }
  }
  if (names_.empty()) {
    for (int a = 0; a < n; ++a) names_.push_back("g" + std::to_string(a));
  } else if (static_cast<int>(names_.size()) != n) {
    throw Error(Error::Kind::InvalidArgument, "one name per group element expected");
  }
}

FiniteGroup cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back("r" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup klein_four() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  }
  return FiniteGroup(std::move(t), {"1", "a", "b", "ab"});
}

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

int permutation_index(const std::vector<int>& images) {
  const auto perms = all_permutations(static_cast<int>(images.size()));
  const auto it = std::find(perms.begin(), perms.end(), images);
  if (it == perms.end()) throw Error(Error::Kind::InvalidArgument, "not a permutation");
  return static_cast<int>(it - perms.begin());
}

FiniteGroup symmetric_group(int n) {
  const auto perms = all_permutations(n);
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> names;
  for (int a = 0; a < m; ++a) {
    std::string s = "p";
    for (int x : perms[a]) s += std::to_string(x);
    names.push_back(s);
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i] - 1];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return FiniteGroup(std::move(t), std::move(names));
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> seen{g.identity()};
  std::vector<int> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (int s : gens) {
        const int y = g.mul(s, x);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace bgpa
