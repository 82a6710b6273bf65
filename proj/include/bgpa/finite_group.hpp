#pragma once

#include <string>
#include <vector>

namespace bgpa {

/// A finite group given by its multiplication table: mul[a][b] = a*b.
/// Element names are cosmetic and used for vertex ids.
class FiniteGroup {
 public:
  /// Throws Error::InvalidArgument unless the table is a group table.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names = {});

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<std::string> names_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

FiniteGroup cyclic_group(int n);
/// Z2 x Z2 with elements 1, a, b, ab (bitwise xor).
FiniteGroup klein_four();
/// S_n on {1..n}, elements in lexicographic order of their images;
/// (p q)(i) = p(q(i)).
FiniteGroup symmetric_group(int n);
/// Index of the permutation with images `images` (1-based) in symmetric_group(n).
int permutation_index(const std::vector<int>& images);

/// Elements of the subgroup generated by `gens`, sorted.
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);

}  // namespace bgpa
