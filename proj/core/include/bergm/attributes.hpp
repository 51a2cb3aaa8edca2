#ifndef BERGM_ATTRIBUTES_HPP_
#define BERGM_ATTRIBUTES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bergm/graph.hpp"

namespace bergm {

enum class ColumnType { categorical, numeric };

/// One attribute column over the nodes of a single mode.
///
/// Categorical levels are sorted lexicographically and fixed at construction;
/// `codes[n]` indexes into `levels`.
struct AttributeColumn {
  std::string name;
  ColumnType type = ColumnType::numeric;
  std::vector<std::string> levels;
  std::vector<int> codes;
  std::vector<double> values;

  int level_code(std::string_view level) const;
};

/// Attribute table for one mode. Every node of the mode has a value in every
/// column.
class AttributeTable {
 public:
  AttributeTable() = default;
  AttributeTable(Mode mode, Node first_node, int node_count);

  /// Table sized to the given mode of `net`.
  static AttributeTable for_mode(const BipartiteNetwork& net, Mode mode);

  Mode mode() const noexcept { return mode_; }
  Node first_node() const noexcept { return first_node_; }
  int node_count() const noexcept { return node_count_; }

  /// `values[n]` belongs to node first_node()+n.
  void add_categorical(std::string name, const std::vector<std::string>& values);
  void add_numeric(std::string name, std::vector<double> values);

  bool has_column(std::string_view name) const;
  /// Throws ModelError naming the column when absent.
  const AttributeColumn& column(std::string_view name) const;
  const std::vector<AttributeColumn>& columns() const noexcept { return columns_; }

  /// Throws ModelError if the column is absent or not categorical.
  const AttributeColumn& categorical(std::string_view name) const;
  const AttributeColumn& numeric(std::string_view name) const;

  bool contains(Node v) const noexcept {
    return v >= first_node_ && v < first_node_ + node_count_;
  }
  std::size_t local_index(Node v) const;

 private:
  void check_new_column(const std::string& name, std::size_t size) const;

  Mode mode_ = Mode::first;
  Node first_node_ = 1;
  int node_count_ = 0;
  std::vector<AttributeColumn> columns_;
};

/// Attribute tables for both modes; either may be absent.
struct NodeAttributes {
  std::optional<AttributeTable> mode1;
  std::optional<AttributeTable> mode2;

  /// Throws ModelError when the requested mode has no table.
  const AttributeTable& table(Mode mode) const;
};

/// u(i,k): number of nodes j, other than the endpoint of (i,k) that lies in
/// the table's mode, adjacent to the other endpoint and sharing the focal
/// node's level of `column`.
int matching_edges_at(const BipartiteNetwork& net, const AttributeTable& table,
                      std::string_view column, Node i, Node k);

}  // namespace bergm

#endif  // BERGM_ATTRIBUTES_HPP_
