#include "bergm/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bergm/error.hpp"

namespace bergm {

namespace {

std::string describe(Node a, Node b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

BipartiteNetwork::BipartiteNetwork(int n1, int n2) : n1_(n1), n2_(n2) {
  if (n1 < 0 || n2 < 0) {
    throw GraphError("node counts must be nonnegative");
  }
  if (dyad_count() >= kNoSlot) {
    throw GraphError("network too large: n1*n2 must stay below 2^32");
  }
  adjacency_.resize(static_cast<std::size_t>(n1) + static_cast<std::size_t>(n2));
  slot_.assign(dyad_count(), kNoSlot);
}

BipartiteNetwork BipartiteNetwork::from_edge_list(int n1, int n2,
                                                  std::span<const Dyad> dyads) {
  BipartiteNetwork net(n1, n2);
  for (const Dyad& d : dyads) {
    const Dyad c = net.canonical(d.i, d.k);
    if (c.i != d.i) {
      throw GraphError("dyad " + describe(d.i, d.k) +
                       " must list the mode-1 node first");
    }
    const std::size_t index = net.dyad_index(c);
    if (net.slot_[index] == kNoSlot) net.insert_edge(c, index);
  }
  return net;
}

Mode BipartiteNetwork::mode_of(Node v) const {
  if (in_mode1(v)) return Mode::first;
  if (in_mode2(v)) return Mode::second;
  throw GraphError("node " + std::to_string(v) + " out of range 1.." +
                   std::to_string(node_count()));
}

Dyad BipartiteNetwork::canonical(Node a, Node b) const {
  if (!is_node(a) || !is_node(b)) {
    throw GraphError("dyad " + describe(a, b) + " out of range 1.." +
                     std::to_string(node_count()));
  }
  if (in_mode1(a) && in_mode2(b)) return {a, b};
  if (in_mode2(a) && in_mode1(b)) return {b, a};
  throw GraphError("dyad " + describe(a, b) +
                   " joins two nodes of the same mode");
}

bool BipartiteNetwork::has_edge(Node a, Node b) const {
  return slot_[dyad_index(canonical(a, b))] != kNoSlot;
}

bool BipartiteNetwork::toggle(Node a, Node b) {
  const Dyad d = canonical(a, b);
  const std::size_t index = dyad_index(d);
  const bool now_present = slot_[index] == kNoSlot;
  if (now_present) {
    insert_edge(d, index);
  } else {
    erase_edge(d, index);
  }
#ifdef BERGM_DEBUG_CHECKS
  check_invariants();
#endif
  return now_present;
}

void BipartiteNetwork::set_edge(Node a, Node b, bool present) {
  if (has_edge(a, b) != present) toggle(a, b);
}

void BipartiteNetwork::insert_edge(Dyad d, std::size_t index) {
  slot_[index] = static_cast<std::uint32_t>(edges_.size());
  edges_.push_back(d);
  auto& ni = adjacency_[d.i - 1];
  ni.insert(std::lower_bound(ni.begin(), ni.end(), d.k), d.k);
  auto& nk = adjacency_[d.k - 1];
  nk.insert(std::lower_bound(nk.begin(), nk.end(), d.i), d.i);
}

void BipartiteNetwork::erase_edge(Dyad d, std::size_t index) {
  const std::uint32_t pos = slot_[index];
  const Dyad last = edges_.back();
  edges_[pos] = last;
  slot_[dyad_index(last)] = pos;
  edges_.pop_back();
  slot_[index] = kNoSlot;
  auto& ni = adjacency_[d.i - 1];
  ni.erase(std::lower_bound(ni.begin(), ni.end(), d.k));
  auto& nk = adjacency_[d.k - 1];
  nk.erase(std::lower_bound(nk.begin(), nk.end(), d.i));
}

std::vector<Dyad> BipartiteNetwork::sorted_edges() const {
  std::vector<Dyad> out(edges_.begin(), edges_.end());
  std::sort(out.begin(), out.end());
  return out;
}

void BipartiteNetwork::check_invariants() const {
  std::size_t from_mode1 = 0;
  std::size_t from_mode2 = 0;
  for (Node v = 1; v <= node_count(); ++v) {
    const auto& nb = adjacency_[v - 1];
    if (!std::is_sorted(nb.begin(), nb.end()) ||
        std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw std::logic_error("neighbor list of " + std::to_string(v) +
                             " not strictly sorted");
    }
    for (Node w : nb) {
      if (in_mode1(v) == in_mode1(w)) {
        throw std::logic_error("same-mode adjacency " + describe(v, w));
      }
      const Dyad d = canonical(v, w);
      if (slot_[dyad_index(d)] == kNoSlot) {
        throw std::logic_error("adjacency " + describe(v, w) +
                               " missing from edge table");
      }
    }
    (in_mode1(v) ? from_mode1 : from_mode2) += nb.size();
  }
  if (from_mode1 != edges_.size() || from_mode2 != edges_.size()) {
    throw std::logic_error("degree sums disagree with edge count");
  }
  std::size_t occupied = 0;
  for (std::size_t index = 0; index < slot_.size(); ++index) {
    if (slot_[index] == kNoSlot) continue;
    ++occupied;
    if (slot_[index] >= edges_.size() || edges_[slot_[index]] != dyad_at(index)) {
      throw std::logic_error("slot table out of sync at dyad index " +
                             std::to_string(index));
    }
  }
  if (occupied != edges_.size()) {
    throw std::logic_error("slot table count disagrees with edge list");
  }
}

bool operator==(const BipartiteNetwork& a, const BipartiteNetwork& b) {
  return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.adjacency_ == b.adjacency_;
}

int two_paths_between(const BipartiteNetwork& net, Node u, Node v,
                      std::optional<Node> excluding) {
  const Mode mu = net.mode_of(u);
  if (net.mode_of(v) != mu) {
    throw GraphError("two-path endpoints " + describe(u, v) +
                     " must be in the same mode");
  }
  if (u == v) {
    throw GraphError("two-path endpoints must differ (got " +
                     std::to_string(u) + " twice)");
  }
  if (excluding && net.mode_of(*excluding) == mu) {
    throw GraphError("excluded node " + std::to_string(*excluding) +
                     " must be in the opposite mode");
  }
  const auto a = net.neighbors(u);
  const auto b = net.neighbors(v);
  int count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      if (!excluding || *ia != *excluding) ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

WeightedProjection project(const BipartiteNetwork& net, Mode mode) {
  WeightedProjection out;
  out.mode = mode;
  out.node_count = net.mode_size(mode);
  const Node first = net.first_node(mode);
  const Node last = first + out.node_count;
  std::vector<int> counts(static_cast<std::size_t>(net.node_count()) + 1, 0);
  std::vector<Node> touched;
  for (Node u = first; u < last; ++u) {
    touched.clear();
    for (Node hub : net.neighbors(u)) {
      for (Node v : net.neighbors(hub)) {
        if (v <= u) continue;
        if (counts[v]++ == 0) touched.push_back(v);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (Node v : touched) {
      out.weights.emplace(std::make_pair(u, v), counts[v]);
      counts[v] = 0;
    }
  }
  return out;
}

}  // namespace bergm
