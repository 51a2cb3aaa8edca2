#include <vector>

#include "bergm/error.hpp"
#include "bergm/terms.hpp"

namespace bergm {

long long SharedPartnerSpectrum::total() const {
  long long sum = 0;
  for (const auto& [_, c] : counts) sum += c;
  return sum;
}

namespace {

void check_table(const BipartiteNetwork& net, const AttributeTable& table) {
  if (table.first_node() != net.first_node(table.mode()) ||
      table.node_count() != net.mode_size(table.mode())) {
    throw ModelError("attribute table does not match network dimensions");
  }
}

}  // namespace

SharedPartnerSpectrum mdsp_spectrum(const BipartiteNetwork& net,
                                    const AttributeTable& table,
                                    std::string_view column) {
  check_table(net, table);
  const auto& col = table.categorical(column);
  SharedPartnerSpectrum out;
  out.kind = SpectrumKind::mdsp;
  const Node first = table.first_node();
  const Node last = first + table.node_count();
  const auto level_of = [&](Node v) { return col.codes[static_cast<std::size_t>(v - first)]; };
  std::vector<int> shared(static_cast<std::size_t>(net.node_count()) + 1, 0);
  std::vector<Node> touched;
  for (Node f = first; f < last; ++f) {
    touched.clear();
    for (Node hub : net.neighbors(f)) {
      for (Node j : net.neighbors(hub)) {
        if (j <= f || level_of(j) != level_of(f)) continue;
        if (shared[static_cast<std::size_t>(j)]++ == 0) touched.push_back(j);
      }
    }
    for (Node j : touched) {
      ++out.counts[shared[static_cast<std::size_t>(j)]];
      shared[static_cast<std::size_t>(j)] = 0;
    }
  }
  return out;
}

SharedPartnerSpectrum mesp_spectrum(const BipartiteNetwork& net,
                                    const AttributeTable& table,
                                    std::string_view column) {
  check_table(net, table);
  const auto& col = table.categorical(column);
  SharedPartnerSpectrum out;
  out.kind = SpectrumKind::mesp;
  const Node first = table.first_node();
  for (const Dyad& d : net.edges()) {
    const Node focal = table.mode() == Mode::first ? d.i : d.k;
    const Node hub = table.mode() == Mode::first ? d.k : d.i;
    const int level = col.codes[static_cast<std::size_t>(focal - first)];
    int u = 0;
    for (Node j : net.neighbors(hub)) {
      if (j != focal && col.codes[static_cast<std::size_t>(j - first)] == level) ++u;
    }
    if (u > 0) ++out.counts[u];
  }
  return out;
}

double recompose_from_spectrum(const SharedPartnerSpectrum& spectrum, double exponent) {
  double sum = 0.0;
  for (const auto& [i, count] : spectrum.counts) {
    sum += homophily_power(i, exponent) * static_cast<double>(count);
  }
  return spectrum.kind == SpectrumKind::mesp ? 0.5 * sum : sum;
}

}  // namespace bergm
