#include "bergm/attributes.hpp"

#include <algorithm>
#include <set>

#include "bergm/error.hpp"

namespace bergm {

namespace {

const char* mode_name(Mode m) { return m == Mode::first ? "mode-1" : "mode-2"; }

}  // namespace

int AttributeColumn::level_code(std::string_view level) const {
  if (type != ColumnType::categorical) {
    throw ModelError("attribute '" + name + "' is numeric, not categorical");
  }
  const auto it = std::lower_bound(levels.begin(), levels.end(), level);
  if (it == levels.end() || *it != level) {
    throw ModelError("attribute '" + name + "' has no level '" +
                     std::string(level) + "'");
  }
  return static_cast<int>(it - levels.begin());
}

AttributeTable::AttributeTable(Mode mode, Node first_node, int node_count)
    : mode_(mode), first_node_(first_node), node_count_(node_count) {}

AttributeTable AttributeTable::for_mode(const BipartiteNetwork& net, Mode mode) {
  return AttributeTable(mode, net.first_node(mode), net.mode_size(mode));
}

void AttributeTable::check_new_column(const std::string& name,
                                      std::size_t size) const {
  if (name.empty()) throw ModelError("attribute column name is empty");
  if (has_column(name)) {
    throw ModelError("duplicate attribute column '" + name + "'");
  }
  if (size != static_cast<std::size_t>(node_count_)) {
    throw ModelError("attribute '" + name + "' has " + std::to_string(size) +
                     " values but " + mode_name(mode_) + " has " +
                     std::to_string(node_count_) + " nodes");
  }
}

void AttributeTable::add_categorical(std::string name,
                                     const std::vector<std::string>& values) {
  check_new_column(name, values.size());
  AttributeColumn col;
  col.name = std::move(name);
  col.type = ColumnType::categorical;
  const std::set<std::string> distinct(values.begin(), values.end());
  col.levels.assign(distinct.begin(), distinct.end());
  col.codes.reserve(values.size());
  for (const auto& v : values) col.codes.push_back(col.level_code(v));
  columns_.push_back(std::move(col));
}

void AttributeTable::add_numeric(std::string name, std::vector<double> values) {
  check_new_column(name, values.size());
  AttributeColumn col;
  col.name = std::move(name);
  col.type = ColumnType::numeric;
  col.values = std::move(values);
  columns_.push_back(std::move(col));
}

bool AttributeTable::has_column(std::string_view name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const AttributeColumn& c) { return c.name == name; });
}

const AttributeColumn& AttributeTable::column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.name == name) return c;
  }
  throw ModelError("no " + std::string(mode_name(mode_)) + " attribute named '" +
                   std::string(name) + "'");
}

const AttributeColumn& AttributeTable::categorical(std::string_view name) const {
  const auto& c = column(name);
  if (c.type != ColumnType::categorical) {
    throw ModelError("attribute '" + c.name + "' must be categorical");
  }
  return c;
}

const AttributeColumn& AttributeTable::numeric(std::string_view name) const {
  const auto& c = column(name);
  if (c.type != ColumnType::numeric) {
    throw ModelError("attribute '" + c.name + "' must be numeric");
  }
  return c;
}

std::size_t AttributeTable::local_index(Node v) const {
  if (!contains(v)) {
    throw GraphError("node " + std::to_string(v) + " is not a " +
                     mode_name(mode_) + " node of this attribute table");
  }
  return static_cast<std::size_t>(v - first_node_);
}

const AttributeTable& NodeAttributes::table(Mode mode) const {
  const auto& t = mode == Mode::first ? mode1 : mode2;
  if (!t) {
    throw ModelError(std::string("no ") + mode_name(mode) +
                     " attributes were supplied");
  }
  return *t;
}

int matching_edges_at(const BipartiteNetwork& net, const AttributeTable& table,
                      std::string_view column, Node i, Node k) {
  const Dyad d = net.canonical(i, k);
  const auto& col = table.categorical(column);
  const Node focal = table.mode() == Mode::first ? d.i : d.k;
  const Node hub = table.mode() == Mode::first ? d.k : d.i;
  const int level = col.codes[table.local_index(focal)];
  int count = 0;
  for (Node j : net.neighbors(hub)) {
    if (j != focal && col.codes[table.local_index(j)] == level) ++count;
  }
  return count;
}

}  // namespace bergm
