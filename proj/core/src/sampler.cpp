#include "bergm/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "bergm/error.hpp"

namespace bergm {

std::string_view proposal_name(Proposal p) noexcept {
  return p == Proposal::tie_no_tie ? "tnt" : "uniform";
}

std::optional<Proposal> proposal_from_name(std::string_view name) noexcept {
  if (name == "tnt" || name == "tie_no_tie") return Proposal::tie_no_tie;
  if (name == "uniform" || name == "uniform_dyad") return Proposal::uniform_dyad;
  return std::nullopt;
}

std::size_t SamplerControl::resolved_burn_in(std::size_t dyads) const {
  if (burn_in) return *burn_in;
  const std::size_t thousands = dyads == 0 ? 1 : (dyads + 999) / 1000;
  return (std::size_t{1} << 14) * thousands;
}

void SamplerControl::validate() const {
  if (interval == 0) throw ModelError("sampler interval must be positive");
  if (sample_size == 0) throw ModelError("sample size must be positive");
  if (chains < 1) throw ModelError("chain count must be positive");
  if (static_cast<std::size_t>(chains) > sample_size) {
    throw ModelError("more chains than retained draws");
  }
}

double cond_log_odds(const CompiledModel& model, const BipartiteNetwork& net,
                     std::span<const double> theta, Node i, Node k) {
  if (theta.size() != model.dimension()) {
    throw ModelError("parameter vector has " + std::to_string(theta.size()) +
                     " entries, model has " + std::to_string(model.dimension()));
  }
  const ChangeVector delta = model.change(net, i, k);
  double lo = 0.0;
  for (std::size_t p = 0; p < delta.size(); ++p) lo += theta[p] * delta[p];
  return lo;
}

namespace {

// Probability that tie/no-tie picks an existing edge in a state with
// `edges` of `dyads` present.
double edge_pick_probability(std::size_t edges, std::size_t dyads) {
  if (edges == 0) return 0.0;
  if (edges == dyads) return 1.0;
  return 0.5;
}

struct Move {
  Dyad dyad;
  bool removes = false;
  double log_proposal_ratio = 0.0;
};

// Draws a proposal; returns false when the network has no dyads.
bool propose(const BipartiteNetwork& net, Proposal proposal, Rng& rng, Move& move) {
  const std::size_t dyads = net.dyad_count();
  if (dyads == 0) return false;
  if (proposal == Proposal::uniform_dyad) {
    const std::size_t index = rng.below(dyads);
    move.dyad = net.dyad_at(index);
    move.removes = net.has_edge_at(index);
    move.log_proposal_ratio = 0.0;
    return true;
  }
  const std::size_t edges = net.edge_count();
  const double p_edge = edge_pick_probability(edges, dyads);
  const bool pick_edge = p_edge == 1.0 || (p_edge > 0.0 && rng.uniform() < p_edge);
  if (pick_edge) {
    move.dyad = net.edges()[rng.below(edges)];
    move.removes = true;
    const double forward = p_edge / static_cast<double>(edges);
    const double reverse = (1.0 - edge_pick_probability(edges - 1, dyads)) /
                           static_cast<double>(dyads - edges + 1);
    move.log_proposal_ratio = std::log(reverse / forward);
  } else {
    std::size_t index = rng.below(dyads);
    while (net.has_edge_at(index)) index = rng.below(dyads);
    move.dyad = net.dyad_at(index);
    move.removes = false;
    const double forward = (1.0 - p_edge) / static_cast<double>(dyads - edges);
    const double reverse =
        edge_pick_probability(edges + 1, dyads) / static_cast<double>(edges + 1);
    move.log_proposal_ratio = std::log(reverse / forward);
  }
  return true;
}

// Proposes, evaluates and possibly applies one toggle. On acceptance
// `delta` holds s(y_new) - s(y_old).
bool metropolis_update(BipartiteNetwork& net, const CompiledModel& model,
                       std::span<const double> theta, Proposal proposal, Rng& rng,
                       std::span<double> delta) {
  Move move;
  if (!propose(net, proposal, rng, move)) return false;
  model.change(net, move.dyad, delta);
  double lo = 0.0;
  for (std::size_t p = 0; p < delta.size(); ++p) lo += theta[p] * delta[p];
  const double log_accept = (move.removes ? -lo : lo) + move.log_proposal_ratio;
  if (log_accept < 0.0 && rng.uniform() >= std::exp(log_accept)) return false;
  net.toggle(move.dyad.i, move.dyad.k);
  if (move.removes) {
    for (double& v : delta) v = -v;
  }
  return true;
}

}  // namespace

bool mh_step(BipartiteNetwork& state, const CompiledModel& model,
             std::span<const double> theta, Proposal proposal, Rng& rng) {
  if (theta.size() != model.dimension()) {
    throw ModelError("parameter vector length does not match the model");
  }
  std::vector<double> delta(model.dimension());
  return metropolis_update(state, model, theta, proposal, rng, delta);
}

MetropolisSampler::MetropolisSampler(const CompiledModel& model, BipartiteNetwork start,
                                     std::vector<double> theta, Proposal proposal,
                                     std::uint64_t seed)
    : model_(&model),
      net_(std::move(start)),
      theta_(std::move(theta)),
      proposal_(proposal),
      rng_(seed),
      stats_(model.eval(net_)),
      delta_(model.dimension()) {
  if (theta_.size() != model.dimension()) {
    throw ModelError("parameter vector has " + std::to_string(theta_.size()) +
                     " entries, model has " + std::to_string(model.dimension()));
  }
}

bool MetropolisSampler::step() {
  ++proposals_;
  if (!metropolis_update(net_, *model_, theta_, proposal_, rng_, delta_)) return false;
  ++accepted_;
  for (std::size_t p = 0; p < stats_.size(); ++p) stats_[p] += delta_[p];
  return true;
}

void MetropolisSampler::run(std::size_t proposals) {
  for (std::size_t n = 0; n < proposals; ++n) step();
}

double MetropolisSampler::audit(double tolerance) const {
  const StatVector fresh = model_->eval(net_);
  double worst = 0.0;
  for (std::size_t p = 0; p < fresh.size(); ++p) {
    worst = std::max(worst, std::abs(fresh[p] - stats_[p]));
  }
  if (worst > tolerance) {
    throw std::logic_error("incremental statistics drifted from recomputation by " +
                           std::to_string(worst));
  }
  return worst;
}

StatSample simulate(const CompiledModel& model, std::span<const double> theta,
                    const BipartiteNetwork& start, const SamplerControl& control) {
  control.validate();
  if (theta.size() != model.dimension()) {
    throw ModelError("parameter vector has " + std::to_string(theta.size()) +
                     " entries, model has " + std::to_string(model.dimension()));
  }
  const std::size_t dim = model.dimension();
  const auto chains = static_cast<std::size_t>(control.chains);
  const std::size_t burn_in = control.resolved_burn_in(start.dyad_count());

  StatSample out;
  out.names = model.names();
  out.stats.resize(static_cast<Eigen::Index>(control.sample_size),
                   static_cast<Eigen::Index>(dim));

  std::vector<std::size_t> first_row(chains + 1, 0);
  for (std::size_t c = 0; c < chains; ++c) {
    const std::size_t rows =
        control.sample_size / chains + (c < control.sample_size % chains ? 1 : 0);
    first_row[c + 1] = first_row[c] + rows;
  }

  struct ChainResult {
    std::size_t proposals = 0;
    std::size_t accepted = 0;
    std::optional<BipartiteNetwork> final_network;
    std::exception_ptr error;
  };
  std::vector<ChainResult> results(chains);
  const std::vector<double> theta_copy(theta.begin(), theta.end());

  const auto run_chain = [&](std::size_t c) {
    try {
      const std::uint64_t seed =
          chains == 1 ? control.seed : split_seed(control.seed, c);
      MetropolisSampler sampler(model, start, theta_copy, control.proposal, seed);
      sampler.run(burn_in);
      for (std::size_t row = first_row[c]; row < first_row[c + 1]; ++row) {
        sampler.run(control.interval);
        const auto s = sampler.stats();
        for (std::size_t p = 0; p < dim; ++p) {
          out.stats(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(p)) = s[p];
        }
      }
      sampler.audit(1e-8);
      results[c].proposals = sampler.proposals();
      results[c].accepted = sampler.accepted();
      if (c + 1 == chains) results[c].final_network = std::move(sampler).take_network();
    } catch (...) {
      results[c].error = std::current_exception();
    }
  };

  if (chains == 1) {
    run_chain(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(chains);
    for (std::size_t c = 0; c < chains; ++c) workers.emplace_back(run_chain, c);
    for (auto& w : workers) w.join();
  }
  for (auto& r : results) {
    if (r.error) std::rethrow_exception(r.error);
    out.proposals += r.proposals;
    out.accepted += r.accepted;
  }
  out.final_network = std::move(results.back().final_network);
  return out;
}

}  // namespace bergm
