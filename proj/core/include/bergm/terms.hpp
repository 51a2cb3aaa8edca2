#ifndef BERGM_TERMS_HPP_
#define BERGM_TERMS_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bergm/attributes.hpp"
#include "bergm/graph.hpp"
#include "bergm/model.hpp"

namespace bergm {

/// s(y): one entry per expanded statistic, in ModelSpec expansion order.
using StatVector = std::vector<double>;
/// s(y with dyad present) - s(y with dyad absent).
using ChangeVector = std::vector<double>;

/// A term bound to attribute data and network dimensions. Implementations
/// are immutable once built and may be shared across threads.
class TermEvaluator {
 public:
  virtual ~TermEvaluator() = default;

  virtual std::size_t size() const = 0;
  virtual void append_names(std::vector<std::string>& names) const = 0;
  /// Writes size() values of the full statistic.
  virtual void eval(const BipartiteNetwork& net, std::span<double> out) const = 0;
  /// Writes size() change values for toggling `d`. Independent of whether
  /// `d` is currently an edge.
  virtual void change(const BipartiteNetwork& net, Dyad d,
                      std::span<double> out) const = 0;
  /// True when the change statistic does not depend on the rest of the
  /// network (edges, cov, factor, sociality).
  virtual bool dyad_independent() const = 0;
};

/**
 * A ModelSpec compiled against attribute tables for networks of a fixed size.
 *
 * Factor and differential nodematch terms expand to one statistic per level
 * (levels sorted; factors drop the first level, b2sociality drops the first
 * mode-2 node). Nodematch exponents follow the 0^0 = 0 convention.
 */
class CompiledModel {
 public:
  CompiledModel(const ModelSpec& spec, const NodeAttributes& attrs, int n1, int n2);

  const ModelSpec& spec() const noexcept { return spec_; }
  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  std::size_t dimension() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool dyad_independent() const noexcept { return dyad_independent_; }
  /// [begin, end) of the statistics contributed by spec().terms[t].
  std::pair<std::size_t, std::size_t> term_slice(std::size_t t) const {
    return {offsets_.at(t), offsets_.at(t + 1)};
  }

  StatVector eval(const BipartiteNetwork& net) const;
  void eval(const BipartiteNetwork& net, std::span<double> out) const;

  ChangeVector change(const BipartiteNetwork& net, Node i, Node k) const;
  /// Hot-path variant: `d` must already be a valid mode-1-first dyad.
  void change(const BipartiteNetwork& net, Dyad d, std::span<double> out) const;

 private:
  void check_network(const BipartiteNetwork& net) const;

  ModelSpec spec_;
  int n1_ = 0;
  int n2_ = 0;
  std::vector<std::shared_ptr<const TermEvaluator>> terms_;
  std::vector<std::size_t> offsets_;
  std::vector<std::string> names_;
  bool dyad_independent_ = true;
};

StatVector eval_stats(const ModelSpec& spec, const BipartiteNetwork& net,
                      const NodeAttributes& attrs);
ChangeVector change_stats(const ModelSpec& spec, const BipartiteNetwork& net,
                          const NodeAttributes& attrs, Node i, Node k);

/// x^e for integer x >= 0 with 0^e = 0 for every e, including e = 0.
double homophily_power(int base, double exponent);

// Shared-partner spectra. The table's mode is the focal mode: a mode-1 table
// gives b1MDSP / b1MESP, a mode-2 table the b2 counterparts.

enum class SpectrumKind { mdsp, mesp };

/// counts[i] = number of matching focal pairs with exactly i shared partners
/// (MDSP), or number of edges lying in exactly i matching two-paths (MESP).
/// Only i >= 1 is stored.
struct SharedPartnerSpectrum {
  SpectrumKind kind = SpectrumKind::mdsp;
  std::map<int, long long> counts;

  long long total() const;
};

SharedPartnerSpectrum mdsp_spectrum(const BipartiteNetwork& net,
                                    const AttributeTable& table,
                                    std::string_view column);
SharedPartnerSpectrum mesp_spectrum(const BipartiteNetwork& net,
                                    const AttributeTable& table,
                                    std::string_view column);

/// sum_i i^exponent * counts[i]; halved for MESP. Reproduces the alpha
/// (MDSP) or beta (MESP) nodematch statistic.
double recompose_from_spectrum(const SharedPartnerSpectrum& spectrum, double exponent);

}  // namespace bergm

#endif  // BERGM_TERMS_HPP_
