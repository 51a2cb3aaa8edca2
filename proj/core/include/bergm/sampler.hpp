#ifndef BERGM_SAMPLER_HPP_
#define BERGM_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bergm/graph.hpp"
#include "bergm/rng.hpp"
#include "bergm/terms.hpp"

namespace bergm {

/// Row-major so each retained draw is a contiguous row.
using StatMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Proposal {
  /// With probability 1/2 a uniformly chosen edge, otherwise a uniformly
  /// chosen empty dyad. Falls back to the only available move when the
  /// network is empty or full.
  tie_no_tie,
  /// A uniformly chosen dyad.
  uniform_dyad,
};

std::string_view proposal_name(Proposal p) noexcept;
std::optional<Proposal> proposal_from_name(std::string_view name) noexcept;

struct SamplerControl {
  /// Unset means 2^14 proposals per started thousand dyads.
  std::optional<std::size_t> burn_in;
  std::size_t interval = 1024;
  std::size_t sample_size = 1024;
  std::uint64_t seed = 0;
  Proposal proposal = Proposal::tie_no_tie;
  /// Independent chains, each seeded by split_seed(seed, chain). sample_size
  /// is split across them and draws are concatenated in chain order.
  int chains = 1;

  std::size_t resolved_burn_in(std::size_t dyads) const;
  /// Throws ModelError on non-positive counts.
  void validate() const;
};

struct StatSample {
  std::vector<std::string> names;
  StatMatrix stats;
  /// State of the last chain after its final draw.
  std::optional<BipartiteNetwork> final_network;
  std::size_t proposals = 0;
  std::size_t accepted = 0;

  double acceptance_rate() const {
    return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

/// theta . delta(i,k): log-odds of the dyad given the rest of the network.
double cond_log_odds(const CompiledModel& model, const BipartiteNetwork& net,
                     std::span<const double> theta, Node i, Node k);

/// One Metropolis-Hastings proposal applied to `state`; returns whether the
/// toggle was accepted.
bool mh_step(BipartiteNetwork& state, const CompiledModel& model,
             std::span<const double> theta, Proposal proposal, Rng& rng);

/**
 * A single chain that tracks s(y) incrementally through change statistics.
 */
class MetropolisSampler {
 public:
  MetropolisSampler(const CompiledModel& model, BipartiteNetwork start,
                    std::vector<double> theta, Proposal proposal, std::uint64_t seed);

  bool step();
  void run(std::size_t proposals);

  const BipartiteNetwork& network() const noexcept { return net_; }
  std::span<const double> stats() const noexcept { return stats_; }
  std::size_t proposals() const noexcept { return proposals_; }
  std::size_t accepted() const noexcept { return accepted_; }

  /// Recomputes s(y) from scratch and returns the largest absolute gap to the
  /// tracked statistics; throws std::logic_error if it exceeds `tolerance`.
  double audit(double tolerance = 1e-8) const;

  BipartiteNetwork take_network() && { return std::move(net_); }

 private:
  const CompiledModel* model_;
  BipartiteNetwork net_;
  std::vector<double> theta_;
  Proposal proposal_;
  Rng rng_;
  std::vector<double> stats_;
  std::vector<double> delta_;
  std::size_t proposals_ = 0;
  std::size_t accepted_ = 0;
};

/// Burn-in, then `sample_size` draws spaced `interval` proposals apart.
/// Deterministic for a fixed control.seed. Ends with an audit of every chain.
StatSample simulate(const CompiledModel& model, std::span<const double> theta,
                    const BipartiteNetwork& start, const SamplerControl& control);

}  // namespace bergm

#endif  // BERGM_SAMPLER_HPP_
