// Acceptance checks. `acceptance <n>` runs criterion n and prints one
// PASS/FAIL line; the exit status is 0 on PASS.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "bergm/error.hpp"
#include "bergm/estimate.hpp"
#include "bergm/formula.hpp"
#include "bergm/io.hpp"
#include "bergm/oracle.hpp"
#include "bergm/sampler.hpp"
#include "bergm/terms.hpp"
#include "brute_force.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using namespace bergm;
using bergm::testing::Dense;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

ModelTerm nodematch(TermKind kind, const std::string& attr, std::optional<double> alpha,
                    std::optional<double> beta, bool diff = false) {
  ModelTerm t;
  t.kind = kind;
  t.attribute = attr;
  t.alpha = alpha;
  t.beta = beta;
  t.diff = diff;
  return t;
}

ModelTerm simple(TermKind kind, std::optional<std::string> attr = std::nullopt,
                 std::optional<int> order = std::nullopt) {
  ModelTerm t;
  t.kind = kind;
  t.attribute = std::move(attr);
  t.order = order;
  return t;
}

// Random attribute tables: mode 1 has categorical "c" and numeric "x",
// mode 2 categorical "d" and numeric "z". Both categorical columns carry at
// least two levels.
NodeAttributes random_attributes(std::mt19937_64& gen, const BipartiteNetwork& net) {
  NodeAttributes attrs;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  attrs.mode1 = AttributeTable::for_mode(net, Mode::first);
  auto c = testing::random_labels(gen, net.n1(), {"a", "b", "c"});
  c[0] = "a";
  c[1] = "b";
  attrs.mode1->add_categorical("c", c);
  std::vector<double> x;
  for (int j = 0; j < net.n1(); ++j) x.push_back(unit(gen));
  attrs.mode1->add_numeric("x", x);
  attrs.mode2 = AttributeTable::for_mode(net, Mode::second);
  auto d = testing::random_labels(gen, net.n2(), {"p", "q"});
  d[0] = "p";
  d[1] = "q";
  attrs.mode2->add_categorical("d", d);
  std::vector<double> z;
  for (int j = 0; j < net.n2(); ++j) z.push_back(unit(gen));
  attrs.mode2->add_numeric("z", z);
  return attrs;
}

std::vector<std::string> labels_of(const AttributeTable& table, const std::string& column) {
  const auto& col = table.categorical(column);
  std::vector<std::string> out;
  for (int code : col.codes) out.push_back(col.levels[static_cast<std::size_t>(code)]);
  return out;
}

Outcome criterion1() {
  const auto start = Clock::now();
  std::mt19937_64 gen(101);
  std::uniform_int_distribution<int> size(2, 10);
  std::uniform_real_distribution<double> dens(0.1, 0.9);
  int mismatches = 0;
  long long largest = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const BipartiteNetwork net = testing::random_network(gen, size(gen), size(gen), dens(gen));
    NodeAttributes attrs;
    attrs.mode1 = AttributeTable::for_mode(net, Mode::first);
    const auto labels = testing::random_labels(gen, net.n1(), {"0", "1"});
    attrs.mode1->add_categorical("bin", labels);
    ModelSpec a{{nodematch(TermKind::b1nodematch, "bin", 1.0, std::nullopt)}};
    ModelSpec b{{nodematch(TermKind::b1nodematch, "bin", std::nullopt, 1.0)}};
    const double sa = eval_stats(a, net, attrs)[0];
    const double sb = eval_stats(b, net, attrs)[0];
    const long long two_stars = testing::matching_two_stars(testing::dense(net), Mode::first, labels);
    largest = std::max(largest, two_stars);
    if (!(sa == sb && sa == static_cast<double>(two_stars))) ++mismatches;
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && secs < 5.0,
          "200 nets, " + std::to_string(mismatches) + " mismatches, largest count " +
              std::to_string(largest) + ", " + num(secs, 3) + " s"};
}

ModelSpec random_spec(std::mt19937_64& gen) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> grid(0, 10);
  const auto exponent = [&]() { return grid(gen) / 10.0; };
  ModelSpec spec;
  if (coin(gen)) spec.terms.push_back(simple(TermKind::edges));
  for (TermKind kind : {TermKind::b1nodematch, TermKind::b2nodematch}) {
    const std::string attr = kind == TermKind::b1nodematch ? "c" : "d";
    const bool use_alpha = coin(gen);
    ModelTerm t = nodematch(kind, attr, use_alpha ? std::optional<double>(exponent()) : std::nullopt,
                            use_alpha ? std::nullopt : std::optional<double>(exponent()), coin(gen));
    if (t.diff && coin(gen)) t.keep_levels = {kind == TermKind::b1nodematch ? "b" : "q"};
    spec.terms.push_back(t);
  }
  if (coin(gen)) spec.terms.push_back(simple(TermKind::b1cov, "x"));
  if (coin(gen)) spec.terms.push_back(simple(TermKind::b2cov, "z"));
  if (coin(gen)) spec.terms.push_back(simple(TermKind::b1factor, "c"));
  if (coin(gen)) spec.terms.push_back(simple(TermKind::b2factor, "d"));
  if (coin(gen)) spec.terms.push_back(simple(TermKind::b2star, std::nullopt, 2 + grid(gen) % 2));
  if (coin(gen)) spec.terms.push_back(simple(TermKind::b2degree, std::nullopt, grid(gen) % 3));
  if (coin(gen)) spec.terms.push_back(simple(TermKind::b2sociality));
  std::shuffle(spec.terms.begin(), spec.terms.end(), gen);
  return spec;
}

Outcome criterion2() {
  const auto start = Clock::now();
  std::mt19937_64 gen(202);
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_real_distribution<double> dens(0.0, 1.0);
  double worst = 0.0;
  int diff_specs = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    BipartiteNetwork net = testing::random_network(gen, size(gen), size(gen), dens(gen));
    const NodeAttributes attrs = random_attributes(gen, net);
    const ModelSpec spec = random_spec(gen);
    for (const auto& t : spec.terms) diff_specs += t.diff ? 1 : 0;
    const CompiledModel model(spec, attrs, net.n1(), net.n2());
    std::uniform_int_distribution<int> pi(1, net.n1());
    std::uniform_int_distribution<int> pk(net.n1() + 1, net.n1() + net.n2());
    const Node i = pi(gen);
    const Node k = pk(gen);
    const ChangeVector delta = model.change(net, i, k);
    BipartiteNetwork with = net;
    with.set_edge(i, k, true);
    BipartiteNetwork without = net;
    without.set_edge(i, k, false);
    const StatVector hi = model.eval(with);
    const StatVector lo = model.eval(without);
    for (std::size_t p = 0; p < delta.size(); ++p) {
      worst = std::max(worst, std::abs(delta[p] - (hi[p] - lo[p])));
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-10 && secs < 10.0,
          "1000 triples (" + std::to_string(diff_specs) + " diff terms), max |error| " +
              num(worst) + ", " + num(secs, 3) + " s"};
}

Outcome criterion3() {
  std::mt19937_64 gen(303);
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_real_distribution<double> dens(0.1, 0.9);
  std::map<double, long long> seen;
  long long components = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const BipartiteNetwork net = testing::random_network(gen, size(gen), size(gen), dens(gen));
    const NodeAttributes attrs = random_attributes(gen, net);
    ModelSpec spec{{nodematch(TermKind::b1nodematch, "c", std::nullopt, 0.0),
                    nodematch(TermKind::b2nodematch, "d", std::nullopt, 0.0),
                    nodematch(TermKind::b1nodematch, "c", std::nullopt, 0.0, true)}};
    spec.terms[2].keep_levels = {"a", "b"};
    const CompiledModel model(spec, attrs, net.n1(), net.n2());
    for (std::size_t index = 0; index < net.dyad_count(); ++index) {
      const Dyad d = net.dyad_at(index);
      for (double v : model.change(net, d.i, d.k)) {
        ++seen[v];
        ++components;
      }
    }
  }
  bool pass = true;
  std::string values;
  for (const auto& [v, count] : seen) {
    if (v != 0.0 && v != 0.5) pass = false;
    values += (values.empty() ? "" : ", ") + num(v) + " x" + std::to_string(count);
  }
  std::string detail = std::to_string(components) + " components; observed values {" + values + "}";
  if (!pass) {
    detail += "; a value of 1 arises when u(i,k) = 1: the single matching partner edge goes from "
              "0^0 = 0 to 1^0 = 1 alongside the new edge, so the bound of 1/2 requires 0^0 = 1";
  }
  return {pass, detail};
}

Outcome criterion4() {
  std::mt19937_64 gen(404);
  std::uniform_int_distribution<int> size(2, 10);
  std::uniform_real_distribution<double> dens(0.1, 0.9);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const BipartiteNetwork net = testing::random_network(gen, size(gen), size(gen), dens(gen));
    const NodeAttributes attrs = random_attributes(gen, net);
    for (Mode mode : {Mode::first, Mode::second}) {
      const TermKind kind = mode == Mode::first ? TermKind::b1nodematch : TermKind::b2nodematch;
      const std::string col = mode == Mode::first ? "c" : "d";
      const AttributeTable& table = attrs.table(mode);
      const auto mdsp = mdsp_spectrum(net, table, col);
      const auto mesp = mesp_spectrum(net, table, col);
      for (int g = 0; g <= 10; ++g) {
        const double e = g / 10.0;
        const double direct_a =
            eval_stats(ModelSpec{{nodematch(kind, col, e, std::nullopt)}}, net, attrs)[0];
        const double direct_b =
            eval_stats(ModelSpec{{nodematch(kind, col, std::nullopt, e)}}, net, attrs)[0];
        worst = std::max(worst, std::abs(recompose_from_spectrum(mdsp, e) - direct_a));
        worst = std::max(worst, std::abs(recompose_from_spectrum(mesp, e) - direct_b));
      }
    }
  }
  return {worst <= 1e-10, "100 nets x 2 modes x 11 exponents x {alpha, beta}, max |error| " + num(worst)};
}

Outcome criterion5() {
  const BipartiteNetwork empty(2, 2);
  NodeAttributes attrs = testing::uniform_mode1(empty, "c");
  struct Config {
    ModelSpec spec;
    std::vector<double> theta;
  };
  std::vector<Config> configs;
  for (double t1 : {-1.0, 0.0, 1.0}) configs.push_back({ModelSpec{{simple(TermKind::edges)}}, {t1}});
  for (double t1 : {-1.0, 0.0, 1.0}) {
    for (double t2 : {-1.0, 0.0, 1.0}) {
      configs.push_back({ModelSpec{{simple(TermKind::edges),
                                    nodematch(TermKind::b1nodematch, "c", 0.5, std::nullopt)}},
                         {t1, t2}});
    }
  }
  bool pass = true;
  double worst_tv = 0.0;
  double slowest = 0.0;
  std::string failures;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto start = Clock::now();
    const CompiledModel model(configs[c].spec, attrs, 2, 2);
    const ExactModel em(model);
    const ExactDistribution exact = exact_dyad_distribution(em, configs[c].theta);
    MetropolisSampler sampler(model, empty, configs[c].theta, Proposal::tie_no_tie,
                              split_seed(505, c));
    sampler.run(10000);
    std::vector<double> freq(em.state_count(), 0.0);
    const int draws = 1000000;
    for (int d = 0; d < draws; ++d) {
      sampler.run(4);
      freq[em.state_of(sampler.network())] += 1.0;
    }
    sampler.audit();
    double tv = 0.0;
    for (std::size_t s = 0; s < freq.size(); ++s) tv += std::abs(freq[s] / draws - exact.probabilities[s]);
    tv *= 0.5;
    const double secs = seconds_since(start);
    worst_tv = std::max(worst_tv, tv);
    slowest = std::max(slowest, secs);
    if (tv > 0.01 || secs >= 60.0) {
      pass = false;
      failures += " config " + std::to_string(c) + " TV " + num(tv);
    }
  }
  return {pass, "12 configurations, 1e6 draws each, max TV " + num(worst_tv) +
                    ", slowest " + num(slowest, 3) + " s" + failures};
}

struct EstimatorCase {
  std::string label;
  BipartiteNetwork net;
  NodeAttributes attrs;
  ModelSpec spec;
};

std::vector<EstimatorCase> estimator_cases() {
  const std::vector<Dyad> a{{1, 4}, {1, 5}, {2, 4}, {2, 5}};
  const std::vector<Dyad> b{{1, 4}, {1, 5}, {1, 6}, {2, 4}};
  const std::vector<Dyad> c{{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {3, 4}};
  const BipartiteNetwork net_a = BipartiteNetwork::from_edge_list(3, 3, a);
  const BipartiteNetwork net_b = BipartiteNetwork::from_edge_list(3, 3, b);
  const BipartiteNetwork net_c = BipartiteNetwork::from_edge_list(3, 3, c);
  NodeAttributes same = testing::uniform_mode1(net_a, "c");
  NodeAttributes mixed;
  mixed.mode1 = AttributeTable::for_mode(net_b, Mode::first);
  mixed.mode1->add_categorical("c", {"a", "a", "b"});
  std::vector<EstimatorCase> out;
  for (bool alpha : {true, false}) {
    const auto term = alpha ? nodematch(TermKind::b1nodematch, "c", 0.5, std::nullopt)
                            : nodematch(TermKind::b1nodematch, "c", std::nullopt, 0.5);
    const ModelSpec spec{{simple(TermKind::edges), term}};
    const std::string tag = alpha ? "alpha=0.5" : "beta=0.5";
    out.push_back({"net A " + tag, net_a, same, spec});
    out.push_back({"net B " + tag, net_b, mixed, spec});
    out.push_back({"net C " + tag, net_c, same, spec});
  }
  return out;
}

EstimationControl estimator_control(std::uint64_t seed) {
  EstimationControl c;
  c.sampler.sample_size = 100000;
  c.sampler.interval = 16;
  c.sampler.burn_in = 4096;
  c.sampler.seed = seed;
  return c;
}

Outcome criterion6() {
  bool pass = true;
  std::ostringstream detail;
  double worst = 0.0;
  std::uint64_t seed = 606;
  for (const auto& ec : estimator_cases()) {
    const CompiledModel model(ec.spec, ec.attrs, 3, 3);
    const ExactMle exact = exact_mle(ExactModel(model), ec.net);
    EstimationControl control = estimator_control(seed++);
    control.compute_loglik = false;
    const FitResult fit = mcmcmle(model, ec.net, control);
    const double err = (fit.theta - exact.theta).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    if (!(err <= 0.05)) pass = false;
    detail << ec.label << " err " << num(err, 3) << "; ";
  }

  // Dyad-independent specs: MPLE against the exact MLE.
  std::mt19937_64 gen(607);
  double worst_mple = 0.0;
  int independent = 0;
  for (int rep = 0; rep < 40; ++rep) {
    std::uniform_int_distribution<int> size(2, 4);
    const int n1 = size(gen);
    const int n2 = std::min(size(gen), 12 / n1);
    if (n2 < 2) continue;
    const BipartiteNetwork net = testing::random_network(gen, n1, n2, 0.5);
    const NodeAttributes attrs = random_attributes(gen, net);
    std::vector<ModelSpec> specs{
        ModelSpec{{simple(TermKind::edges)}},
        ModelSpec{{simple(TermKind::edges), simple(TermKind::b1factor, "c")}},
        ModelSpec{{simple(TermKind::edges), simple(TermKind::b1cov, "x")}},
        ModelSpec{{simple(TermKind::edges), simple(TermKind::b2cov, "z"), simple(TermKind::b2factor, "d")}}};
    for (const auto& spec : specs) {
      const CompiledModel model(spec, attrs, n1, n2);
      std::optional<ExactMle> exact;
      try {
        exact = exact_mle(ExactModel(model), net);
      } catch (const EstimationError&) {
        // MLE at infinity; MPLE must then report separation too.
        bool separated = false;
        try {
          mple(model, net);
        } catch (const EstimationError&) {
          separated = true;
        }
        if (!separated) pass = false;
        continue;
      }
      const FitResult fit = mple(model, net);
      worst_mple = std::max(worst_mple, (fit.theta - exact->theta).cwiseAbs().maxCoeff());
      ++independent;
    }
  }
  if (!(worst_mple <= 1e-6) || independent < 50) pass = false;
  detail << "mcmcmle max err " << num(worst, 3) << "; MPLE vs exact on " << independent
         << " dyad-independent fits, max |diff| " << num(worst_mple, 3);
  return {pass, detail.str()};
}

Outcome criterion7() {
  bool pass = true;
  std::ostringstream detail;
  std::uint64_t seed = 707;
  for (const auto& ec : estimator_cases()) {
    const CompiledModel model(ec.spec, ec.attrs, 3, 3);
    const ExactModel em(model);
    const FitResult fit = mcmcmle(model, ec.net, estimator_control(seed++));
    const double exact = exact_loglik(
        em, std::span<const double>(fit.theta.data(), static_cast<std::size_t>(fit.theta.size())),
        ec.net);
    const double gap = std::abs(*fit.loglik - exact);
    const double z = gap / fit.loglik_sd;
    if (!(gap <= 3.0 * fit.loglik_sd)) pass = false;
    detail << ec.label << ": bridge " << num(*fit.loglik, 8) << " sd " << num(fit.loglik_sd, 3)
           << " exact " << num(exact, 8) << " (" << num(z, 3) << " sd); ";
  }
  return {pass, detail.str()};
}

// Profile CSV rows keyed by (kind, exponent).
struct ProfileRow {
  double loglik = NAN;
  double loglik_sd = NAN;
  double coef = NAN;
  double coef_mcse = NAN;
  std::string status;
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Outcome criterion8() {
  const fs::path dir = fs::temp_directory_path() / ("bergm_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  // Synthetic 30 x 15 network drawn at alpha* = 0.5.
  const BipartiteNetwork empty(30, 15);
  NodeAttributes attrs;
  attrs.mode1 = AttributeTable::for_mode(empty, Mode::first);
  std::vector<std::string> g;
  for (int j = 0; j < 30; ++j) g.push_back(j % 2 ? "m" : "f");
  attrs.mode1->add_categorical("g", g);
  const ModelSpec truth{{simple(TermKind::edges), nodematch(TermKind::b1nodematch, "g", 0.5, std::nullopt)}};
  const CompiledModel truth_model(truth, attrs, 30, 15);
  SamplerControl sc;
  sc.sample_size = 1;
  sc.seed = 808;
  const std::vector<double> theta{-1.5, 0.3};
  const BipartiteNetwork net = *simulate(truth_model, theta, empty, sc).final_network;
  {
    std::ofstream f(dir / "net.edgelist");
    write_edge_list(f, net);
    std::ofstream a(dir / "attrs1.tsv");
    write_attributes(a, *attrs.mode1);
  }

  const std::string net_path = (dir / "net.edgelist").string();
  const std::string attr_path = (dir / "attrs1.tsv").string();
  const std::string out_path = (dir / "out").string();
  const std::vector<std::string> args{"bergm", "profile", "--network", net_path, "--attrs1", attr_path,
                                      "--model", "edges + b1nodematch(\"g\")", "--alpha-grid",
                                      "default", "--beta-grid", "default", "--seed", "8",
                                      "--samplesize", "4096", "--interval", "256",
                                      "--out", out_path};
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const auto start = Clock::now();
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  const double secs = seconds_since(start);
  if (code != 0) return {false, "profile exited with " + std::to_string(code) + ": " + err.str()};

  std::ifstream csv(fs::path(out_path) / "profile.csv");
  std::string line;
  std::vector<std::string> header;
  std::map<std::pair<std::string, double>, ProfileRow> rows;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (header.empty()) {
      header = f;
      continue;
    }
    std::map<std::string, std::string> r;
    for (std::size_t j = 0; j < header.size() && j < f.size(); ++j) r[header[j]] = f[j];
    const auto to_d = [](const std::string& s) { return s == "NA" || s.empty() ? NAN : std::stod(s); };
    ProfileRow row{to_d(r["loglik"]), to_d(r["loglik_sd"]), to_d(r["coef"]), to_d(r["coef_mcse"]),
                   r["status"]};
    rows[{r["kind"], std::stod(r["exponent"])}] = row;
  }
  int alpha_rows = 0;
  int beta_rows = 0;
  int bad = 0;
  for (const auto& [key, row] : rows) {
    (key.first == "alpha" ? alpha_rows : beta_rows) += 1;
    if (row.status != "ok" || std::isnan(row.loglik)) ++bad;
  }
  const auto a1 = rows.find({"alpha", 1.0});
  const auto b1 = rows.find({"beta", 1.0});
  if (a1 == rows.end() || b1 == rows.end()) return {false, "missing alpha=1 or beta=1 row"};
  const ProfileRow& ra = a1->second;
  const ProfileRow& rb = b1->second;
  const double ll_gap = std::abs(ra.loglik - rb.loglik);
  const double ll_tol = 3.0 * std::hypot(ra.loglik_sd, rb.loglik_sd);
  const double coef_gap = std::abs(ra.coef - rb.coef);
  const double coef_tol = 3.0 * std::hypot(ra.coef_mcse, rb.coef_mcse);
  const bool pass = secs < 600.0 && alpha_rows == 11 && beta_rows == 11 && bad == 0 &&
                    ll_gap <= ll_tol && coef_gap <= coef_tol;
  fs::remove_all(dir);
  return {pass, std::to_string(alpha_rows) + "+" + std::to_string(beta_rows) + " rows (" +
                    std::to_string(bad) + " not ok) in " + num(secs, 4) + " s; alpha=1 vs beta=1 loglik " +
                    num(ra.loglik, 8) + " vs " + num(rb.loglik, 8) + " (tol " + num(ll_tol, 3) +
                    "), coef " + num(ra.coef, 5) + " vs " + num(rb.coef, 5) + " (tol " +
                    num(coef_tol, 3) + ")"};
}

Outcome criterion9() {
  const BipartiteNetwork net = testing::figure2();
  const NodeAttributes attrs = testing::uniform_mode1(net, "c");
  std::vector<std::string> failures;
  const auto check = [&](const std::string& what, double got, double want, double tol = 1e-12) {
    if (!(std::abs(got - want) <= tol)) failures.push_back(what + " = " + num(got, 12) + " (want " + num(want, 12) + ")");
  };
  const auto stat = [&](std::optional<double> a, std::optional<double> b) {
    return eval_stats(ModelSpec{{nodematch(TermKind::b1nodematch, "c", a, b)}}, net, attrs)[0];
  };
  check("alpha=0", stat(0.0, std::nullopt), 3.0);
  check("alpha=0.5", stat(0.5, std::nullopt), 2.0 + std::sqrt(2.0));
  check("alpha=1", stat(1.0, std::nullopt), 4.0);
  check("beta=0", stat(std::nullopt, 0.0), 2.5);
  check("beta=0.5", stat(std::nullopt, 0.5), 3.12132, 5e-6);
  check("beta=1", stat(std::nullopt, 1.0), 4.0);

  BipartiteNetwork minus = net;
  minus.toggle(1, 4);
  for (double e : {0.0, 0.5, 1.0}) {
    const auto da = change_stats(ModelSpec{{nodematch(TermKind::b1nodematch, "c", e, std::nullopt)}},
                                 minus, attrs, 1, 4)[0];
    const auto db = change_stats(ModelSpec{{nodematch(TermKind::b1nodematch, "c", std::nullopt, e)}},
                                 minus, attrs, 1, 4)[0];
    check("delta alpha=" + num(e), da, std::pow(2.0, e));
    check("delta beta=" + num(e), db, (3.0 * std::pow(2.0, e) - 2.0) / 2.0);
  }

  const WeightedProjection p1 = project(net, Mode::first);
  const std::map<std::pair<Node, Node>, int> want1{{{1, 2}, 2}, {{1, 3}, 1}, {{2, 3}, 1}};
  if (p1.weights != want1) failures.push_back("mode-1 projection weights");
  const WeightedProjection p2 = project(net, Mode::second);
  if (p2.weights != std::map<std::pair<Node, Node>, int>{{{4, 5}, 2}}) failures.push_back("mode-2 projection weights");

  const auto mdsp = mdsp_spectrum(net, *attrs.mode1, "c");
  const auto mesp = mesp_spectrum(net, *attrs.mode1, "c");
  if (mdsp.counts != std::map<int, long long>{{1, 2}, {2, 1}}) failures.push_back("MDSP spectrum");
  if (mesp.counts != std::map<int, long long>{{1, 2}, {2, 3}}) failures.push_back("MESP spectrum");

  std::string detail = "6 statistics, 6 change statistics, 2 projections, 2 spectra";
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>>& registry() {
  static const std::map<int, std::pair<std::string, std::function<Outcome()>>> r{
      {1, {"statistic coincidence at alpha=1 / beta=1", criterion1}},
      {2, {"incremental change statistics", criterion2}},
      {3, {"beta=0 change statistic in {0, 1/2}", criterion3}},
      {4, {"spectrum recomposition", criterion4}},
      {5, {"sampler total variation on 2x2", criterion5}},
      {6, {"estimators against the exact MLE", criterion6}},
      {7, {"bridge log-likelihood against exact", criterion7}},
      {8, {"profile workflow on 30x15", criterion8}},
      {9, {"worked-example values", criterion9}},
  };
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int a = 1; a < argc; ++a) which.push_back(std::atoi(argv[a]));
  if (which.empty()) {
    for (const auto& [n, entry] : registry()) which.push_back(n);
  }
  int failed = 0;
  for (int n : which) {
    const auto it = registry().find(n);
    if (it == registry().end()) {
      std::cerr << "unknown criterion " << n << "\n";
      return 2;
    }
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << it->second.first
              << "): " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
