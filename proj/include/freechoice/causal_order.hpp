#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freechoice {

using Edge = std::pair<std::string, std::string>;

/// A preorder (reflexive, transitive relation) over variable labels.
/// precedes(a, b) reads "b is in the causal future of a". Antisymmetry is
/// not required, so cycles give mutual precedence.
///
/// The relation is stored fully closed as a dense matrix.
class CausalOrder {
 public:
  /// Reflexive-transitive closure of `edges` over `labels`.
  static CausalOrder from_edges(std::vector<std::string> labels, const std::vector<Edge>& edges);

  const std::vector<std::string>& labels() const { return labels_; }
  bool has_label(std::string_view label) const;

  bool precedes(std::string_view a, std::string_view b) const;
  /// {w : not precedes(a, w)}, in label order. Never contains a.
  std::vector<std::string> non_future(std::string_view a) const;
  /// {w != a : precedes(w, a)}, in label order.
  std::vector<std::string> strict_past(std::string_view a) const;
  /// Neither precedes the other; rejects a == b with SameLabel.
  bool mutually_unordered(std::string_view a, std::string_view b) const;

  /// Every related pair except the reflexive ones, row-major in label order.
  std::vector<Edge> pairs() const;
  /// Induced order on a subset of labels (still a preorder).
  CausalOrder restricted_to(const std::vector<std::string>& keep) const;
  /// Same relation with labels permuted into `order`, which must be a permutation of labels().
  CausalOrder reordered(const std::vector<std::string>& order) const;

  /// Relation equality over label sets; label order is ignored.
  friend bool operator==(const CausalOrder& a, const CausalOrder& b);

 private:
  std::size_t index(std::string_view label) const;
  bool at(std::size_t i, std::size_t j) const { return relation_[i * labels_.size() + j] != 0; }

  std::vector<std::string> labels_;
  std::vector<char> relation_;
};

/// Two-party Bell layout: labels Z, A, B, X, Y with Z->X, Z->Y, A->X, B->Y.
CausalOrder bell_order();

}  // namespace freechoice
