#ifndef BERGM_GRAPH_HPP_
#define BERGM_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bergm {

/// 1-based node index. Mode-1 nodes are 1..n1, mode-2 nodes n1+1..n1+n2.
using Node = int;

enum class Mode { first = 1, second = 2 };

constexpr Mode other(Mode m) noexcept {
  return m == Mode::first ? Mode::second : Mode::first;
}

/// A mode-1 x mode-2 pair, mode-1 endpoint first.
struct Dyad {
  Node i = 0;
  Node k = 0;

  friend auto operator<=>(const Dyad&, const Dyad&) = default;
};

/**
 * Undirected bipartite network.
 *
 * Each edge is stored once. Neighbor lists are kept sorted so that shared
 * partner counts are a linear merge. A dense per-dyad slot table gives O(1)
 * edge queries and O(1) removal from the unordered edge list, which the
 * tie/no-tie proposal samples from.
 *
 * Not safe for concurrent mutation; clone per sampler chain.
 */
class BipartiteNetwork {
 public:
  BipartiteNetwork() = default;
  BipartiteNetwork(int n1, int n2);

  /// Builds a network from a dyad list. Duplicates collapse; every dyad is
  /// validated and the first offending one is reported.
  static BipartiteNetwork from_edge_list(int n1, int n2,
                                         std::span<const Dyad> dyads);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  int node_count() const noexcept { return n1_ + n2_; }
  std::size_t dyad_count() const noexcept {
    return static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_);
  }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  Mode mode_of(Node v) const;
  bool is_node(Node v) const noexcept { return v >= 1 && v <= n1_ + n2_; }
  bool in_mode1(Node v) const noexcept { return v >= 1 && v <= n1_; }
  bool in_mode2(Node v) const noexcept { return v > n1_ && v <= n1_ + n2_; }

  /// First node id of a mode and its size.
  Node first_node(Mode m) const noexcept { return m == Mode::first ? 1 : n1_ + 1; }
  int mode_size(Mode m) const noexcept { return m == Mode::first ? n1_ : n2_; }

  /// Accepts the endpoints in either order.
  bool has_edge(Node a, Node b) const;

  /// Flips the dyad. Returns true if the edge is present afterwards.
  bool toggle(Node a, Node b);
  void set_edge(Node a, Node b, bool present);

  std::span<const Node> neighbors(Node v) const { return adjacency_.at(v - 1); }
  int degree(Node v) const { return static_cast<int>(adjacency_.at(v - 1).size()); }

  /// Current edges in unspecified order.
  std::span<const Dyad> edges() const noexcept { return edges_; }
  std::vector<Dyad> sorted_edges() const;

  /// Row-major dyad index: (i-1)*n2 + (k-n1-1).
  std::size_t dyad_index(Dyad d) const noexcept {
    return static_cast<std::size_t>(d.i - 1) * static_cast<std::size_t>(n2_) +
           static_cast<std::size_t>(d.k - n1_ - 1);
  }
  Dyad dyad_at(std::size_t index) const noexcept {
    return {static_cast<Node>(index / static_cast<std::size_t>(n2_)) + 1,
            static_cast<Node>(index % static_cast<std::size_t>(n2_)) + n1_ + 1};
  }
  bool has_edge_at(std::size_t index) const noexcept {
    return slot_[index] != kNoSlot;
  }

  /// Orders (a, b) into a mode-1-first dyad; throws GraphError when the pair
  /// is out of range or lies within one mode.
  Dyad canonical(Node a, Node b) const;

  /// Throws std::logic_error if the adjacency lists, edge list and slot
  /// table disagree.
  void check_invariants() const;

  friend bool operator==(const BipartiteNetwork& a, const BipartiteNetwork& b);

 private:
  static constexpr std::uint32_t kNoSlot = 0xffffffffu;

  void insert_edge(Dyad d, std::size_t index);
  void erase_edge(Dyad d, std::size_t index);

  int n1_ = 0;
  int n2_ = 0;
  std::vector<std::vector<Node>> adjacency_;
  std::vector<Dyad> edges_;
  std::vector<std::uint32_t> slot_;
};

/// Number of opposite-mode nodes adjacent to both u and v, optionally not
/// counting `excluding`. u and v must be distinct nodes of the same mode.
int two_paths_between(const BipartiteNetwork& net, Node u, Node v,
                      std::optional<Node> excluding = std::nullopt);

/// One-mode projection. Weight of {u,v} is the number of two-paths between
/// them; pairs with weight zero are absent. Keys are ordered (u < v).
struct WeightedProjection {
  Mode mode = Mode::first;
  int node_count = 0;
  std::map<std::pair<Node, Node>, int> weights;
};

WeightedProjection project(const BipartiteNetwork& net, Mode mode);

}  // namespace bergm

#endif  // BERGM_GRAPH_HPP_
