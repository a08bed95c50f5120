#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flatcover {

/// Simple undirected graph, optionally with a color partition into equal
/// classes. Vertices are 0..n-1.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(std::size_t n) : adj_(n) {}

  static ColoredGraph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    ColoredGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= size() || v >= size()) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (adjacent(u, v)) throw std::invalid_argument("duplicate edge");
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  }

  /// Sets the color classes; each must be nonempty, all of equal size,
  /// disjoint and covering every vertex, and no edge may stay inside one.
  void set_colors(std::vector<std::vector<std::size_t>> classes) {
    if (classes.empty()) throw std::invalid_argument("empty color partition");
    std::vector<int> seen(size(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].size() != classes[0].size() || classes[c].empty())
        throw std::invalid_argument("color classes must be nonempty and of equal size");
      for (auto v : classes[c]) {
        if (v >= size()) throw std::invalid_argument("colored vertex out of range");
        if (seen[v] >= 0) throw std::invalid_argument("vertex " + std::to_string(v) + " has two colors");
        seen[v] = static_cast<int>(c);
      }
    }
    for (std::size_t v = 0; v < size(); ++v)
      if (seen[v] < 0) throw std::invalid_argument("vertex " + std::to_string(v) + " has no color");
    for (std::size_t u = 0; u < size(); ++u)
      for (auto v : adj_[u])
        if (seen[u] == seen[v]) throw std::invalid_argument("edge inside a color class");
    color_of_.assign(seen.begin(), seen.end());
    colors_ = std::move(classes);
  }

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adj_) s += a.size();
    return s / 2;
  }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
  bool adjacent(std::size_t u, std::size_t v) const {
    return std::binary_search(adj_.at(u).begin(), adj_.at(u).end(), v);
  }

  /// N[v] as a sorted list.
  std::vector<std::size_t> closed_neighborhood(std::size_t v) const {
    auto out = adj_.at(v);
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u)
      for (auto v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool colored() const { return !colors_.empty(); }
  const std::vector<std::vector<std::size_t>>& colors() const { return colors_; }
  std::size_t color_of(std::size_t v) const { return color_of_.at(v); }

  /// Common degree of every vertex, if the graph is regular.
  std::optional<std::size_t> regular_degree() const {
    if (adj_.empty()) return std::nullopt;
    for (const auto& a : adj_)
      if (a.size() != adj_[0].size()) return std::nullopt;
    return adj_[0].size();
  }

  bool connected() const {
    if (adj_.empty()) return true;
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : adj_[u])
        if (!seen[v]) {
          seen[v] = true;
          ++reached;
          stack.push_back(v);
        }
    }
    return reached == size();
  }

  bool is_dominating(const std::vector<std::size_t>& set) const {
    std::vector<bool> dom(size(), false);
    for (auto v : set) {
      if (v >= size()) throw std::invalid_argument("vertex out of range");
      dom[v] = true;
      for (auto u : adj_[v]) dom[u] = true;
    }
    return std::all_of(dom.begin(), dom.end(), [](bool b) { return b; });
  }

  bool is_independent(const std::vector<std::size_t>& set) const {
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (set[a] == set[b] || adjacent(set[a], set[b])) return false;
    return true;
  }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::vector<std::size_t>> colors_;
  std::vector<std::size_t> color_of_;
};

}  // namespace flatcover
