#include "freechoice/causal_order.hpp"

#include <algorithm>
#include <unordered_set>

#include "freechoice/error.hpp"

namespace freechoice {

CausalOrder CausalOrder::from_edges(std::vector<std::string> labels, const std::vector<Edge>& edges) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::DuplicateLabel, l);
    }
  }
  CausalOrder o;
  o.labels_ = std::move(labels);
  const std::size_t n = o.labels_.size();
  o.relation_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    o.relation_[i * n + i] = 1;
  }
  for (const auto& [from, to] : edges) {
    o.relation_[o.index(from) * n + o.index(to)] = 1;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!o.relation_[i * n + k]) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        o.relation_[i * n + j] |= o.relation_[k * n + j];
      }
    }
  }
  return o;
}

std::size_t CausalOrder::index(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw Error(ErrorCode::UnknownLabel, std::string(label));
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

bool CausalOrder::has_label(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

bool CausalOrder::precedes(std::string_view a, std::string_view b) const { return at(index(a), index(b)); }

std::vector<std::string> CausalOrder::non_future(std::string_view a) const {
  const auto i = index(a);
  std::vector<std::string> out;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (!at(i, j)) {
      out.push_back(labels_[j]);
    }
  }
  return out;
}

std::vector<std::string> CausalOrder::strict_past(std::string_view a) const {
  const auto i = index(a);
  std::vector<std::string> out;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (j != i && at(j, i)) {
      out.push_back(labels_[j]);
    }
  }
  return out;
}

bool CausalOrder::mutually_unordered(std::string_view a, std::string_view b) const {
  const auto i = index(a);
  const auto j = index(b);
  if (i == j) {
    throw Error(ErrorCode::SameLabel, std::string(a));
  }
  return !at(i, j) && !at(j, i);
}

std::vector<Edge> CausalOrder::pairs() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = 0; j < labels_.size(); ++j) {
      if (i != j && at(i, j)) {
        out.emplace_back(labels_[i], labels_[j]);
      }
    }
  }
  return out;
}

CausalOrder CausalOrder::restricted_to(const std::vector<std::string>& keep) const {
  std::vector<Edge> edges;
  for (const auto& a : keep) {
    for (const auto& b : keep) {
      if (a != b && precedes(a, b)) {
        edges.emplace_back(a, b);
      }
    }
  }
  return from_edges(keep, edges);
}

CausalOrder CausalOrder::reordered(const std::vector<std::string>& order) const {
  if (order.size() != labels_.size()) {
    throw Error(ErrorCode::LabelMismatch, "reordering must be a permutation of the labels");
  }
  return restricted_to(order);
}

bool operator==(const CausalOrder& a, const CausalOrder& b) {
  if (a.labels_.size() != b.labels_.size()) {
    return false;
  }
  std::vector<std::size_t> map;
  map.reserve(a.labels_.size());
  for (const auto& l : a.labels_) {
    if (!b.has_label(l)) {
      return false;
    }
    map.push_back(b.index(l));
  }
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) {
      if (a.at(i, j) != b.at(map[i], map[j])) {
        return false;
      }
    }
  }
  return true;
}

CausalOrder bell_order() {
  return CausalOrder::from_edges({"Z", "A", "B", "X", "Y"},
                                 {{"Z", "X"}, {"Z", "Y"}, {"A", "X"}, {"B", "Y"}});
}

}  // namespace freechoice
