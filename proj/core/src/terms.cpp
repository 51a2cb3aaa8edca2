#include "bergm/terms.hpp"

#include <algorithm>
#include <cmath>

#include "bergm/error.hpp"

namespace bergm {

double homophily_power(int base, double exponent) {
  if (base <= 0) return 0.0;
  if (exponent == 1.0) return static_cast<double>(base);
  return std::pow(static_cast<double>(base), exponent);
}

namespace {

// Global-node-indexed view of one attribute column, so hot loops index by
// node id without mode arithmetic.
std::vector<int> codes_by_node(const AttributeColumn& col, const AttributeTable& table,
                               int total_nodes) {
  std::vector<int> out(static_cast<std::size_t>(total_nodes) + 1, -1);
  for (int n = 0; n < table.node_count(); ++n) {
    out[static_cast<std::size_t>(table.first_node() + n)] =
        col.codes[static_cast<std::size_t>(n)];
  }
  return out;
}

const AttributeTable& table_for(const NodeAttributes& attrs, Mode mode, int n1, int n2) {
  const auto& t = attrs.table(mode);
  const int expected = mode == Mode::first ? n1 : n2;
  const Node first = mode == Mode::first ? 1 : n1 + 1;
  if (t.node_count() != expected || t.first_node() != first) {
    throw ModelError("attribute table does not match network dimensions");
  }
  return t;
}

double binomial(int n, int k) {
  if (k < 0 || n < k) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / j;
  return std::round(r);
}

class EdgesTerm final : public TermEvaluator {
 public:
  std::size_t size() const override { return 1; }
  void append_names(std::vector<std::string>& names) const override {
    names.emplace_back("edges");
  }
  void eval(const BipartiteNetwork& net, std::span<double> out) const override {
    out[0] = static_cast<double>(net.edge_count());
  }
  void change(const BipartiteNetwork&, Dyad, std::span<double> out) const override {
    out[0] = 1.0;
  }
  bool dyad_independent() const override { return true; }
};

class CovTerm final : public TermEvaluator {
 public:
  CovTerm(Mode mode, const AttributeTable& table, const std::string& attribute,
          int total_nodes)
      : mode_(mode),
        name_(std::string(mode == Mode::first ? "b1cov." : "b2cov.") + attribute),
        value_(static_cast<std::size_t>(total_nodes) + 1, 0.0) {
    const auto& col = table.numeric(attribute);
    for (int n = 0; n < table.node_count(); ++n) {
      value_[static_cast<std::size_t>(table.first_node() + n)] =
          col.values[static_cast<std::size_t>(n)];
    }
  }
  std::size_t size() const override { return 1; }
  void append_names(std::vector<std::string>& names) const override {
    names.push_back(name_);
  }
  void eval(const BipartiteNetwork& net, std::span<double> out) const override {
    double sum = 0.0;
    for (const Dyad& d : net.sorted_edges()) sum += value_[endpoint(d)];
    out[0] = sum;
  }
  void change(const BipartiteNetwork&, Dyad d, std::span<double> out) const override {
    out[0] = value_[endpoint(d)];
  }
  bool dyad_independent() const override { return true; }

 private:
  std::size_t endpoint(Dyad d) const {
    return static_cast<std::size_t>(mode_ == Mode::first ? d.i : d.k);
  }
  Mode mode_;
  std::string name_;
  std::vector<double> value_;
};

class FactorTerm final : public TermEvaluator {
 public:
  FactorTerm(Mode mode, const AttributeTable& table, const std::string& attribute,
             int total_nodes)
      : mode_(mode) {
    const auto& col = table.categorical(attribute);
    if (col.levels.size() < 2) {
      throw ModelError(std::string(mode == Mode::first ? "b1factor" : "b2factor") +
                       "(\"" + attribute + "\") needs at least two levels");
    }
    const std::string prefix =
        std::string(mode == Mode::first ? "b1factor." : "b2factor.") + attribute + ".";
    for (std::size_t l = 1; l < col.levels.size(); ++l) {
      names_.push_back(prefix + col.levels[l]);
    }
    code_ = codes_by_node(col, table, total_nodes);
  }
  std::size_t size() const override { return names_.size(); }
  void append_names(std::vector<std::string>& names) const override {
    names.insert(names.end(), names_.begin(), names_.end());
  }
  void eval(const BipartiteNetwork& net, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (const Dyad& d : net.edges()) {
      const int c = code_[endpoint(d)];
      if (c > 0) out[static_cast<std::size_t>(c - 1)] += 1.0;
    }
  }
  void change(const BipartiteNetwork&, Dyad d, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    const int c = code_[endpoint(d)];
    if (c > 0) out[static_cast<std::size_t>(c - 1)] = 1.0;
  }
  bool dyad_independent() const override { return true; }

 private:
  std::size_t endpoint(Dyad d) const {
    return static_cast<std::size_t>(mode_ == Mode::first ? d.i : d.k);
  }
  Mode mode_;
  std::vector<std::string> names_;
  std::vector<int> code_;
};

class StarTerm final : public TermEvaluator {
 public:
  explicit StarTerm(int k) : k_(k) {}
  std::size_t size() const override { return 1; }
  void append_names(std::vector<std::string>& names) const override {
    names.push_back("b2star" + std::to_string(k_));
  }
  void eval(const BipartiteNetwork& net, std::span<double> out) const override {
    double sum = 0.0;
    for (Node h = net.n1() + 1; h <= net.node_count(); ++h) {
      sum += binomial(net.degree(h), k_);
    }
    out[0] = sum;
  }
  void change(const BipartiteNetwork& net, Dyad d, std::span<double> out) const override {
    const int others = net.degree(d.k) - (net.has_edge_at(net.dyad_index(d)) ? 1 : 0);
    out[0] = binomial(others, k_ - 1);
  }
  bool dyad_independent() const override { return k_ == 1; }

 private:
  int k_;
};

class DegreeTerm final : public TermEvaluator {
 public:
  explicit DegreeTerm(int degree) : degree_(degree) {}
  std::size_t size() const override { return 1; }
  void append_names(std::vector<std::string>& names) const override {
    names.push_back("b2deg" + std::to_string(degree_));
  }
  void eval(const BipartiteNetwork& net, std::span<double> out) const override {
    double count = 0.0;
    for (Node h = net.n1() + 1; h <= net.node_count(); ++h) {
      if (net.degree(h) == degree_) count += 1.0;
    }
    out[0] = count;
  }
  void change(const BipartiteNetwork& net, Dyad d, std::span<double> out) const override {
    const int others = net.degree(d.k) - (net.has_edge_at(net.dyad_index(d)) ? 1 : 0);
    out[0] = (others + 1 == degree_ ? 1.0 : 0.0) - (others == degree_ ? 1.0 : 0.0);
  }
  bool dyad_independent() const override { return false; }

 private:
  int degree_;
};

class SocialityTerm final : public TermEvaluator {
 public:
  SocialityTerm(int n1, int n2) : n1_(n1), n2_(n2) {
    if (n2 < 2) throw ModelError("b2sociality needs at least two mode-2 nodes");
  }
  std::size_t size() const override { return static_cast<std::size_t>(n2_ - 1); }
  void append_names(std::vector<std::string>& names) const override {
    for (Node h = n1_ + 2; h <= n1_ + n2_; ++h) {
      names.push_back("b2sociality." + std::to_string(h));
    }
  }
  void eval(const BipartiteNetwork& net, std::span<double> out) const override {
    for (Node h = n1_ + 2; h <= n1_ + n2_; ++h) {
      out[static_cast<std::size_t>(h - n1_ - 2)] = net.degree(h);
    }
  }
  void change(const BipartiteNetwork&, Dyad d, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    if (d.k >= n1_ + 2) out[static_cast<std::size_t>(d.k - n1_ - 2)] = 1.0;
  }
  bool dyad_independent() const override { return true; }

 private:
  int n1_;
  int n2_;
};

/**
 * b1nodematch / b2nodematch in the node-pair (alpha) or edge (beta) form.
 *
 * "Focal" nodes carry the attribute; "hub" nodes are the opposite mode
 * through which two-paths run. For b1 terms the focal mode is mode 1.
 *
 *   alpha:  sum over unordered matching focal pairs {f,j} of t(f,j)^alpha
 *   beta:   1/2 * sum over edges (f,h) of u(f,h)^beta
 *
 * where t counts shared hubs and u counts other matching neighbors of h.
 */
class NodematchTerm final : public TermEvaluator {
 public:
  NodematchTerm(const ModelTerm& term, const AttributeTable& table, int n1, int n2)
      : focal_mode_(term.kind == TermKind::b1nodematch ? Mode::first : Mode::second),
        use_alpha_(term.alpha.has_value()),
        exponent_(term.alpha ? *term.alpha : *term.beta) {
    const auto& col = table.categorical(*term.attribute);
    code_ = codes_by_node(col, table, n1 + n2);
    component_.assign(col.levels.size(), -1);
    const std::string base = std::string(term_name(term.kind)) + "." + *term.attribute;
    if (!term.diff) {
      std::fill(component_.begin(), component_.end(), 0);
      names_.push_back(base);
    } else {
      std::vector<int> chosen;
      if (term.keep_levels.empty()) {
        for (std::size_t l = 0; l < col.levels.size(); ++l) chosen.push_back(static_cast<int>(l));
      } else {
        for (const auto& lvl : term.keep_levels) chosen.push_back(col.level_code(lvl));
        std::sort(chosen.begin(), chosen.end());
      }
      for (int l : chosen) {
        component_[static_cast<std::size_t>(l)] = static_cast<int>(names_.size());
        names_.push_back(base + "." + col.levels[static_cast<std::size_t>(l)]);
      }
    }

    const int max_base = std::max(n1, n2) + 2;
    power_.resize(static_cast<std::size_t>(max_base) + 1);
    for (int b = 0; b <= max_base; ++b) {
      power_[static_cast<std::size_t>(b)] = homophily_power(b, exponent_);
    }
    if (use_alpha_) {
      // (t+1)^a - t^a
      increment_.resize(static_cast<std::size_t>(max_base));
      for (int t = 0; t < max_base; ++t) {
        increment_[static_cast<std::size_t>(t)] =
            power_[static_cast<std::size_t>(t) + 1] - power_[static_cast<std::size_t>(t)];
      }
    } else {
      // 1/2 [(1+u) u^b - u (u-1)^b]
      increment_.resize(static_cast<std::size_t>(max_base));
      increment_[0] = 0.0;
      for (int u = 1; u < max_base; ++u) {
        increment_[static_cast<std::size_t>(u)] =
            0.5 * ((1.0 + u) * power_[static_cast<std::size_t>(u)] -
                   u * power_[static_cast<std::size_t>(u) - 1]);
      }
    }
  }

  std::size_t size() const override { return names_.size(); }
  void append_names(std::vector<std::string>& names) const override {
    names.insert(names.end(), names_.begin(), names_.end());
  }
  bool dyad_independent() const override { return false; }

  void eval(const BipartiteNetwork& net, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    if (use_alpha_) {
      eval_alpha(net, out);
    } else {
      eval_beta(net, out);
    }
  }

  void change(const BipartiteNetwork& net, Dyad d, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    const Node focal = focal_mode_ == Mode::first ? d.i : d.k;
    const Node hub = focal_mode_ == Mode::first ? d.k : d.i;
    const int level = code_[static_cast<std::size_t>(focal)];
    const int comp = component_[static_cast<std::size_t>(level)];
    if (comp < 0) return;
    double delta = 0.0;
    if (use_alpha_) {
      const auto focal_hubs = net.neighbors(focal);
      for (Node j : net.neighbors(hub)) {
        if (j == focal || code_[static_cast<std::size_t>(j)] != level) continue;
        const int t = shared_excluding(focal_hubs, net.neighbors(j), hub);
        delta += increment_[static_cast<std::size_t>(t)];
      }
    } else {
      int u = 0;
      for (Node j : net.neighbors(hub)) {
        if (j != focal && code_[static_cast<std::size_t>(j)] == level) ++u;
      }
      delta = increment_[static_cast<std::size_t>(u)];
    }
    out[static_cast<std::size_t>(comp)] = delta;
  }

 private:
  static int shared_excluding(std::span<const Node> a, std::span<const Node> b, Node skip) {
    int count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        if (*ia != skip) ++count;
        ++ia;
        ++ib;
      }
    }
    return count;
  }

  void eval_alpha(const BipartiteNetwork& net, std::span<double> out) const {
    const Node first = net.first_node(focal_mode_);
    const Node last = first + net.mode_size(focal_mode_);
    std::vector<int> shared(static_cast<std::size_t>(net.node_count()) + 1, 0);
    std::vector<Node> touched;
    for (Node f = first; f < last; ++f) {
      const int level = code_[static_cast<std::size_t>(f)];
      const int comp = component_[static_cast<std::size_t>(level)];
      if (comp < 0) continue;
      touched.clear();
      for (Node hub : net.neighbors(f)) {
        for (Node j : net.neighbors(hub)) {
          if (j <= f || code_[static_cast<std::size_t>(j)] != level) continue;
          if (shared[static_cast<std::size_t>(j)]++ == 0) touched.push_back(j);
        }
      }
      // Sorted accumulation keeps the floating-point sum independent of
      // adjacency insertion history.
      std::sort(touched.begin(), touched.end());
      for (Node j : touched) {
        out[static_cast<std::size_t>(comp)] +=
            power_[static_cast<std::size_t>(shared[static_cast<std::size_t>(j)])];
        shared[static_cast<std::size_t>(j)] = 0;
      }
    }
  }

  void eval_beta(const BipartiteNetwork& net, std::span<double> out) const {
    const Mode hub_mode = other(focal_mode_);
    const Node first = net.first_node(hub_mode);
    const Node last = first + net.mode_size(hub_mode);
    std::vector<int> per_level(component_.size(), 0);
    for (Node hub = first; hub < last; ++hub) {
      const auto nb = net.neighbors(hub);
      for (Node f : nb) ++per_level[static_cast<std::size_t>(code_[static_cast<std::size_t>(f)])];
      for (Node f : nb) {
        const int level = code_[static_cast<std::size_t>(f)];
        const int comp = component_[static_cast<std::size_t>(level)];
        if (comp < 0) continue;
        const int u = per_level[static_cast<std::size_t>(level)] - 1;
        out[static_cast<std::size_t>(comp)] += 0.5 * power_[static_cast<std::size_t>(u)];
      }
      for (Node f : nb) per_level[static_cast<std::size_t>(code_[static_cast<std::size_t>(f)])] = 0;
    }
  }

  Mode focal_mode_;
  bool use_alpha_;
  double exponent_;
  std::vector<int> code_;
  std::vector<int> component_;
  std::vector<std::string> names_;
  std::vector<double> power_;
  std::vector<double> increment_;
};

std::shared_ptr<const TermEvaluator> make_term(const ModelTerm& term,
                                               const NodeAttributes& attrs, int n1,
                                               int n2) {
  switch (term.kind) {
    case TermKind::edges:
      return std::make_shared<EdgesTerm>();
    case TermKind::b1cov:
      return std::make_shared<CovTerm>(Mode::first, table_for(attrs, Mode::first, n1, n2),
                                       *term.attribute, n1 + n2);
    case TermKind::b2cov:
      return std::make_shared<CovTerm>(Mode::second, table_for(attrs, Mode::second, n1, n2),
                                       *term.attribute, n1 + n2);
    case TermKind::b1factor:
      return std::make_shared<FactorTerm>(
          Mode::first, table_for(attrs, Mode::first, n1, n2), *term.attribute, n1 + n2);
    case TermKind::b2factor:
      return std::make_shared<FactorTerm>(
          Mode::second, table_for(attrs, Mode::second, n1, n2), *term.attribute, n1 + n2);
    case TermKind::b1nodematch:
      return std::make_shared<NodematchTerm>(term, table_for(attrs, Mode::first, n1, n2),
                                             n1, n2);
    case TermKind::b2nodematch:
      return std::make_shared<NodematchTerm>(term, table_for(attrs, Mode::second, n1, n2),
                                             n1, n2);
    case TermKind::b2star:
      return std::make_shared<StarTerm>(*term.order);
    case TermKind::b2degree:
      return std::make_shared<DegreeTerm>(*term.order);
    case TermKind::b2sociality:
      return std::make_shared<SocialityTerm>(n1, n2);
  }
  throw ModelError("unknown term kind");
}

}  // namespace

CompiledModel::CompiledModel(const ModelSpec& spec, const NodeAttributes& attrs, int n1,
                             int n2)
    : spec_(spec), n1_(n1), n2_(n2) {
  validate(spec_);
  std::size_t offset = 0;
  for (const auto& term : spec_.terms) {
    auto evaluator = make_term(term, attrs, n1, n2);
    offsets_.push_back(offset);
    offset += evaluator->size();
    evaluator->append_names(names_);
    dyad_independent_ = dyad_independent_ && evaluator->dyad_independent();
    terms_.push_back(std::move(evaluator));
  }
  offsets_.push_back(offset);
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
      dup != sorted.end()) {
    throw ModelError("statistic '" + *dup + "' appears twice in the model");
  }
}

void CompiledModel::check_network(const BipartiteNetwork& net) const {
  if (net.n1() != n1_ || net.n2() != n2_) {
    throw ModelError("model compiled for " + std::to_string(n1_) + "x" +
                     std::to_string(n2_) + " networks, got " + std::to_string(net.n1()) +
                     "x" + std::to_string(net.n2()));
  }
}

StatVector CompiledModel::eval(const BipartiteNetwork& net) const {
  StatVector out(dimension());
  eval(net, out);
  return out;
}

void CompiledModel::eval(const BipartiteNetwork& net, std::span<double> out) const {
  check_network(net);
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    terms_[t]->eval(net, out.subspan(offsets_[t], offsets_[t + 1] - offsets_[t]));
  }
}

ChangeVector CompiledModel::change(const BipartiteNetwork& net, Node i, Node k) const {
  check_network(net);
  const Dyad d = net.canonical(i, k);
  ChangeVector out(dimension());
  change(net, d, out);
  return out;
}

void CompiledModel::change(const BipartiteNetwork& net, Dyad d,
                           std::span<double> out) const {
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    terms_[t]->change(net, d, out.subspan(offsets_[t], offsets_[t + 1] - offsets_[t]));
  }
}

StatVector eval_stats(const ModelSpec& spec, const BipartiteNetwork& net,
                      const NodeAttributes& attrs) {
  return CompiledModel(spec, attrs, net.n1(), net.n2()).eval(net);
}

ChangeVector change_stats(const ModelSpec& spec, const BipartiteNetwork& net,
                          const NodeAttributes& attrs, Node i, Node k) {
  return CompiledModel(spec, attrs, net.n1(), net.n2()).change(net, i, k);
}

}  // namespace bergm
