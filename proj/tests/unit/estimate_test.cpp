#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "bergm/error.hpp"
#include "bergm/estimate.hpp"
#include "bergm/oracle.hpp"
#include "brute_force.hpp"

namespace bergm {
namespace {

ModelTerm term(TermKind kind, std::optional<std::string> attr = std::nullopt) {
  ModelTerm t;
  t.kind = kind;
  t.attribute = std::move(attr);
  return t;
}

ModelTerm nodematch(std::string attr, std::optional<double> alpha, std::optional<double> beta,
                    bool diff = false) {
  ModelTerm t = term(TermKind::b1nodematch, std::move(attr));
  t.alpha = alpha;
  t.beta = beta;
  t.diff = diff;
  return t;
}

void expect_psd(const Eigen::MatrixXd& cov) {
  EXPECT_LE((cov - cov.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10);
}

EstimationControl control(std::size_t size, std::size_t interval, std::uint64_t seed) {
  EstimationControl c;
  c.sampler.sample_size = size;
  c.sampler.interval = interval;
  c.sampler.burn_in = 4096;
  c.sampler.seed = seed;
  return c;
}

TEST(Mple, EdgesOnlyIsLogitDensity) {
  const auto net = testing::figure2();
  const CompiledModel model({{term(TermKind::edges)}}, NodeAttributes{}, 3, 2);
  const auto fit = mple(model, net);
  EXPECT_NEAR(fit.theta[0], std::log(5.0), 1e-8);
  EXPECT_EQ(fit.method, FitMethod::mple);
  EXPECT_EQ(fit.loglik_kind, "exact");
  ASSERT_TRUE(fit.loglik);
  EXPECT_NEAR(*fit.loglik, 5.0 * std::log(5.0 / 6.0) + std::log(1.0 / 6.0), 1e-10);
  EXPECT_NEAR(fit.std_errors()[0], std::sqrt(1.0 / (6.0 * 5.0 / 36.0)), 1e-8);
}

TEST(Mple, EmptyNetworkIsSeparated) {
  const CompiledModel model({{term(TermKind::edges)}}, NodeAttributes{}, 3, 2);
  try {
    mple(model, BipartiteNetwork(3, 2));
    FAIL();
  } catch (const EstimationError& e) {
    ASSERT_EQ(e.direction().size(), 1u);
    EXPECT_LT(e.direction()[0], 0.0);
  }
}

TEST(Mple, DyadTableGroupsDyads) {
  const auto net = testing::figure2();
  const auto attrs = testing::uniform_mode1(net);
  const CompiledModel model({{term(TermKind::edges), nodematch("c", 1.0, std::nullopt)}}, attrs, 3, 2);
  const auto table = dyad_table(model, net);
  double total = 0;
  for (double c : table.count) total += c;
  EXPECT_EQ(total, 6.0);
  EXPECT_EQ(table.names, model.names());
  EXPECT_EQ(table.change.rows(), static_cast<Eigen::Index>(table.response.size()));
}

// Closed form: with edges + b1factor the pseudo-likelihood factorizes by
// level, so theta_edges = logit(density of the first level) and
// theta_edges + theta_level = logit(density of that level).
TEST(Mple, FactorMatchesPerLevelLogit) {
  std::mt19937_64 gen(51);
  int checked = 0;
  while (checked < 20) {
    const auto net = testing::random_network(gen, 6, 4, 0.5);
    const auto labels = testing::random_labels(gen, 6, {"a", "b", "c"});
    NodeAttributes attrs;
    attrs.mode1 = AttributeTable::for_mode(net, Mode::first);
    attrs.mode1->add_categorical("g", labels);
    std::map<std::string, std::pair<double, double>> tally;
    const auto y = testing::dense(net);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t k = 0; k < 4; ++k) {
        tally[labels[i]].first += y[i][k];
        tally[labels[i]].second += 1;
      }
    }
    bool interior = tally.size() == 3;
    for (const auto& [lvl, t] : tally) interior = interior && t.first > 0 && t.first < t.second;
    if (!interior) continue;
    const CompiledModel model({{term(TermKind::edges), term(TermKind::b1factor, "g")}}, attrs, 6, 4);
    const auto fit = mple(model, net);
    const double base = testing::logit(tally["a"].first / tally["a"].second);
    EXPECT_NEAR(fit.theta[0], base, 1e-6);
    EXPECT_NEAR(fit.theta[1], testing::logit(tally["b"].first / tally["b"].second) - base, 1e-6);
    EXPECT_NEAR(fit.theta[2], testing::logit(tally["c"].first / tally["c"].second) - base, 1e-6);
    expect_psd(fit.covariance);
    ++checked;
  }
}

TEST(Mple, EqualsExactMleForDyadIndependentModels) {
  std::mt19937_64 gen(52);
  int checked = 0;
  for (int rep = 0; rep < 200 && checked < 30; ++rep) {
    const int n1 = 2 + rep % 3;
    const int n2 = 12 / n1;
    const auto net = testing::random_network(gen, n1, n2, 0.5);
    NodeAttributes attrs;
    attrs.mode1 = AttributeTable::for_mode(net, Mode::first);
    std::vector<double> x;
    for (int i = 0; i < n1; ++i) x.push_back(0.5 * i + 0.25 * (rep % 2));
    attrs.mode1->add_numeric("x", x);
    attrs.mode2 = AttributeTable::for_mode(net, Mode::second);
    auto labels = testing::random_labels(gen, n2, {"p", "q"});
    labels[0] = "p";
    labels[1] = "q";
    attrs.mode2->add_categorical("d", labels);
    const CompiledModel model({{term(TermKind::edges), term(TermKind::b1cov, "x"), term(TermKind::b2factor, "d")}},
                              attrs, n1, n2);
    const ExactModel em(model);
    ExactMle exact;
    try {
      exact = exact_mle(em, net);
    } catch (const EstimationError&) {
      EXPECT_THROW(mple(model, net), EstimationError);
      continue;
    }
    const auto fit = mple(model, net);
    EXPECT_LE((fit.theta - exact.theta).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_NEAR(*fit.loglik, exact.loglik, 1e-6);
    ++checked;
  }
  EXPECT_EQ(checked, 30);
}

TEST(Mcmcmle, DyadIndependentAgreesWithMple) {
  std::mt19937_64 gen(53);
  const auto net = testing::random_network(gen, 8, 6, 0.4);
  NodeAttributes attrs;
  attrs.mode1 = AttributeTable::for_mode(net, Mode::first);
  std::vector<double> x;
  for (int i = 0; i < 8; ++i) x.push_back(std::sin(i));
  attrs.mode1->add_numeric("x", x);
  const CompiledModel model({{term(TermKind::edges), term(TermKind::b1cov, "x")}}, attrs, 8, 6);
  const auto reference = mple(model, net);
  auto c = control(20000, 8, 54);
  c.compute_loglik = false;
  const auto fit = mcmcmle(model, net, c);
  EXPECT_EQ(fit.method, FitMethod::mcmcmle);
  EXPECT_TRUE(fit.diagnostics.converged);
  for (Eigen::Index j = 0; j < 2; ++j) {
    EXPECT_GT(fit.mc_std_error[j], 0.0);
    EXPECT_LE(std::abs(fit.theta[j] - reference.theta[j]), 3.0 * fit.mc_std_error[j])
        << fit.names[static_cast<std::size_t>(j)];
  }
  expect_psd(fit.covariance);
}

BipartiteNetwork three_by_three() {
  const std::vector<Dyad> d{{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {3, 4}};
  return BipartiteNetwork::from_edge_list(3, 3, d);
}

TEST(Mcmcmle, StartAtExactMleBarelyMoves) {
  const auto net = three_by_three();
  const auto attrs = testing::uniform_mode1(net);
  const CompiledModel model({{term(TermKind::edges), nodematch("c", 0.5, std::nullopt)}}, attrs, 3, 3);
  const auto exact = exact_mle(ExactModel(model), net);
  const std::vector<double> start(exact.theta.data(), exact.theta.data() + exact.theta.size());
  auto c = control(100000, 16, 55);
  c.compute_loglik = false;
  const auto fit = mcmcmle(model, net, start, c);
  ASSERT_FALSE(fit.diagnostics.step_norms.empty());
  EXPECT_LE(fit.diagnostics.step_norms.front(), 0.02);
  EXPECT_LE((fit.theta - exact.theta).cwiseAbs().maxCoeff(), 0.05);
  expect_psd(fit.covariance);
}

TEST(BridgeLoglik, MatchesExactAtMle) {
  const auto net = three_by_three();
  const auto attrs = testing::uniform_mode1(net);
  const CompiledModel model({{term(TermKind::edges), nodematch("c", std::nullopt, 0.5)}}, attrs, 3, 3);
  const auto exact = exact_mle(ExactModel(model), net);
  const std::vector<double> theta(exact.theta.data(), exact.theta.data() + exact.theta.size());
  const auto est = bridge_loglik(model, net, theta, control(20000, 16, 56), 56);
  EXPECT_GT(est.sd, 0.0);
  EXPECT_LE(std::abs(est.value - exact.loglik), 3.0 * est.sd) << est.value << " vs " << exact.loglik;
  const std::vector<double> zero{0.0, 0.0};
  const auto flat = bridge_loglik(model, net, zero, control(100, 4, 57), 57);
  EXPECT_NEAR(flat.value, -9.0 * std::log(2.0), 1e-12);
}

TEST(Contrast, Examples) {
  FitResult fit;
  fit.names = {"a", "b", "c"};
  fit.theta = Eigen::Vector3d(1.0, 2.5, -0.5);
  fit.covariance = Eigen::Matrix3d{{0.4, 0.1, 0.0}, {0.1, 0.9, 0.2}, {0.0, 0.2, 0.25}};
  const std::vector<double> e2{0, 1, 0};
  const auto c2 = contrast(fit, e2);
  EXPECT_EQ(c2.estimate, 2.5);
  EXPECT_NEAR(c2.std_error, std::sqrt(0.9), 1e-15);
  const std::vector<double> diff{0, 1, -1};
  const auto d = contrast(fit, diff);
  EXPECT_EQ(d.estimate, 3.0);
  EXPECT_NEAR(d.std_error, std::sqrt(0.9 + 0.25 - 0.4), 1e-15);
  const std::vector<double> zero{0, 0, 0};
  EXPECT_EQ(contrast(fit, zero).estimate, 0.0);
  EXPECT_EQ(contrast(fit, zero).std_error, 0.0);
  const std::vector<double> short_w{1, 0};
  EXPECT_THROW(contrast(fit, short_w), ModelError);
}

TEST(Contrast, DifferentialHomophilyLevels) {
  std::mt19937_64 gen(58);
  const auto net = testing::random_network(gen, 8, 5, 0.5);
  NodeAttributes attrs;
  attrs.mode1 = AttributeTable::for_mode(net, Mode::first);
  attrs.mode1->add_categorical("gender", {"F", "M", "F", "M", "F", "M", "F", "M"});
  const CompiledModel model({{term(TermKind::edges), nodematch("gender", std::nullopt, 0.1, true)}}, attrs, 8, 5);
  const auto fit = mple(model, net);
  EXPECT_EQ(fit.names, (std::vector<std::string>{"edges", "b1nodematch.gender.F", "b1nodematch.gender.M"}));
  const std::vector<double> w{0, 1, -1};
  const auto c = contrast(fit, w);
  EXPECT_NEAR(c.estimate, fit.theta[1] - fit.theta[2], 1e-14);
  const auto& v = fit.covariance;
  EXPECT_NEAR(c.std_error, std::sqrt(v(1, 1) + v(2, 2) - 2 * v(1, 2)), 1e-12);
}

TEST(Wald, PValuesAndStars) {
  EXPECT_NEAR(wald_p_value(0.0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(wald_p_value(1.959963984540054, 1.0), 0.05, 1e-12);
  EXPECT_NEAR(wald_p_value(-1.959963984540054, 1.0), 0.05, 1e-12);
  EXPECT_EQ(significance_stars(0.2), "");
  EXPECT_EQ(significance_stars(0.04), "*");
  EXPECT_EQ(significance_stars(0.0009), "**");
  EXPECT_EQ(significance_stars(0.00009), "***");
  EXPECT_EQ(method_from_name("mple"), FitMethod::mple);
  EXPECT_EQ(method_from_name("mcmcmle"), FitMethod::mcmcmle);
  EXPECT_FALSE(method_from_name("bayes"));
}

ModelSpec profile_template() {
  return {{term(TermKind::edges), nodematch("c", std::nullopt, std::nullopt)}};
}

TEST(Profile, DefaultGridGivesElevenPoints) {
  std::mt19937_64 gen(59);
  const auto net = testing::random_network(gen, 6, 4, 0.3);
  NodeAttributes attrs;
  attrs.mode1 = AttributeTable::for_mode(net, Mode::first);
  attrs.mode1->add_categorical("c", {"a", "b", "a", "b", "a", "b"});
  const auto grid = default_profile_grid();
  ASSERT_EQ(grid.size(), 11u);
  for (ExponentKind kind : {ExponentKind::alpha, ExponentKind::beta}) {
    const auto points = profile(profile_template(), kind, grid, net, attrs, EstimationControl{}, FitMethod::mple);
    ASSERT_EQ(points.size(), 11u);
    for (std::size_t g = 0; g < points.size(); ++g) {
      EXPECT_EQ(points[g].kind, kind);
      EXPECT_NEAR(points[g].value, g / 10.0, 1e-15);
      ASSERT_TRUE(points[g].fit) << points[g].error;
      EXPECT_EQ(points[g].homophily_index, (std::vector<std::size_t>{1}));
    }
  }
}

TEST(Profile, AlphaOneAndBetaOneCoincide) {
  std::mt19937_64 gen(60);
  const auto net = testing::random_network(gen, 6, 4, 0.5);
  const auto attrs = testing::uniform_mode1(net);
  const std::vector<double> one{1.0};
  const auto a = profile(profile_template(), ExponentKind::alpha, one, net, attrs, EstimationControl{}, FitMethod::mple);
  const auto b = profile(profile_template(), ExponentKind::beta, one, net, attrs, EstimationControl{}, FitMethod::mple);
  ASSERT_TRUE(a[0].fit && b[0].fit);
  EXPECT_LE((a[0].fit->theta - b[0].fit->theta).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Profile, GridIsSortedAndDeduplicated) {
  const auto net = three_by_three();
  const auto attrs = testing::uniform_mode1(net);
  const std::vector<double> grid{0.7, 0.2, 0.7, 0.0};
  const auto points = profile(profile_template(), ExponentKind::beta, grid, net, attrs, EstimationControl{}, FitMethod::mple);
  ASSERT_EQ(points.size(), 3u);
  EXPECT_EQ(points[0].value, 0.0);
  EXPECT_EQ(points[1].value, 0.2);
  EXPECT_EQ(points[2].value, 0.7);
}

TEST(Profile, Errors) {
  const auto net = three_by_three();
  const auto attrs = testing::uniform_mode1(net);
  const std::vector<double> bad{0.5, 1.5};
  EXPECT_THROW(profile(profile_template(), ExponentKind::alpha, bad, net, attrs, EstimationControl{}), ModelError);
  const ModelSpec bound{{term(TermKind::edges), nodematch("c", 0.5, std::nullopt)}};
  const std::vector<double> grid{0.5};
  EXPECT_THROW(profile(bound, ExponentKind::alpha, grid, net, attrs, EstimationControl{}), ModelError);

  // Every point fails on an empty network; the grid still completes.
  const auto points = profile(profile_template(), ExponentKind::alpha, default_profile_grid(), BipartiteNetwork(3, 3),
                              attrs, control(200, 4, 61));
  ASSERT_EQ(points.size(), 11u);
  for (const auto& p : points) {
    EXPECT_FALSE(p.fit);
    EXPECT_FALSE(p.error.empty());
  }
}

// Simulation study: data drawn at alpha = 0.5 from three independent 4 x 5
// networks per replicate, profiled over the default grid with exact pooled
// likelihoods. The maximum should fall in [0.3, 0.7] in at least 16 of 20
// replicates. Exact enumeration removes Monte-Carlo error, so the outcome
// reflects only how well alpha is identified at this size.
TEST(ProfileStudy, RecoversSimulatedExponent) {
  constexpr int kN1 = 4;
  constexpr int kN2 = 5;
  constexpr int kReplicates = 20;
  constexpr int kNets = 3;
  const BipartiteNetwork shape(kN1, kN2);
  const auto attrs = testing::uniform_mode1(shape);
  const auto grid = default_profile_grid();
  const auto exact_for = [&](double alpha) {
    return ExactModel(CompiledModel(bind_exponent(profile_template(), ExponentKind::alpha, alpha), attrs, kN1, kN2));
  };

  std::mt19937_64 gen(62);
  std::vector<std::vector<std::uint64_t>> states(kReplicates);
  {
    const auto truth = exact_for(0.5);
    const std::vector<double> theta{-1.0, 0.5};
    const auto dist = exact_dyad_distribution(truth, theta);
    std::discrete_distribution<std::uint64_t> draw(dist.probabilities.begin(), dist.probabilities.end());
    for (auto& s : states) {
      for (int r = 0; r < kNets; ++r) s.push_back(draw(gen));
    }
  }

  std::vector<std::vector<double>> loglik(kReplicates, std::vector<double>(grid.size(), -INFINITY));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto em = exact_for(grid[g]);
    for (int rep = 0; rep < kReplicates; ++rep) {
      Eigen::VectorXd observed = Eigen::VectorXd::Zero(2);
      for (auto s : states[static_cast<std::size_t>(rep)]) observed += em.stats_of(s);
      Eigen::VectorXd theta = Eigen::VectorXd::Zero(2);
      for (int it = 0; it < 200; ++it) {
        const std::vector<double> t(theta.data(), theta.data() + 2);
        const auto m = exact_moments(em, t);
        const Eigen::VectorXd grad = observed - kNets * m.mean;
        if (grad.norm() <= 1e-9) {
          loglik[static_cast<std::size_t>(rep)][g] = theta.dot(observed) - kNets * m.log_kappa;
          break;
        }
        const Eigen::VectorXd step = (kNets * m.covariance).ldlt().solve(grad);
        theta += std::min(1.0, 2.0 / step.norm()) * step;
      }
    }
  }

  int hits = 0;
  std::string argmax;
  for (const auto& row : loglik) {
    const auto best = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    argmax += " " + std::to_string(grid[best]).substr(0, 3);
    hits += grid[best] >= 0.3 - 1e-12 && grid[best] <= 0.7 + 1e-12 ? 1 : 0;
  }
  EXPECT_GE(hits, 16) << "profile maxima:" << argmax;
}

}  // namespace
}  // namespace bergm
