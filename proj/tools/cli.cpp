#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergm/error.hpp"
#include "bergm/estimate.hpp"
#include "bergm/formula.hpp"
#include "bergm/io.hpp"
#include "bergm/oracle.hpp"
#include "bergm/rng.hpp"
#include "bergm/sampler.hpp"

namespace bergm::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Options {
  std::string network;
  std::string attrs1;
  std::string attrs2;
  std::string model;
  std::string model_file;
  std::uint64_t seed = 1;
  std::optional<std::size_t> burnin;
  std::size_t interval = 1024;
  std::size_t samplesize = 1024;
  std::string proposal = "tnt";
  int chains = 1;
  std::string out;
  bool strict_degeneracy = false;

  std::string method = "mcmcmle";
  int max_anchors = 20;
  bool no_loglik = false;
  std::optional<std::size_t> bridge_samplesize;
  std::string alpha_grid;
  std::string beta_grid;
  std::string theta;
  std::string final_network;
  int mode = 1;
  std::string query = "mle";
  int max_dyads = ExactModel::kMaxDyads;
};

// Everything a subcommand needs once the inputs are loaded.
struct Inputs {
  BipartiteNetwork net;
  NodeAttributes attrs;
  std::optional<ModelSpec> spec;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "NA";
  return format_number(v);
}

std::string fixed(double v, int digits = 4) {
  if (std::isnan(v)) return "NA";
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError(std::string("empty entry in ") + what);
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw ParseError(std::string("not a number in ") + what + ": '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParseError(std::string(what) + " is empty");
  return out;
}

std::vector<double> parse_grid(const std::string& text, const char* what) {
  if (text == "default") return default_profile_grid();
  return parse_list(text, what);
}

std::string read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path);
  std::string line;
  std::string text;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    text += line + " ";
  }
  return text;
}

Inputs load(const Options& o, bool need_model) {
  Inputs in;
  if (o.network.empty()) throw ModelError("--network is required");
  in.net = read_edge_list_file(o.network);
  if (!o.attrs1.empty()) in.attrs.mode1 = read_attributes_file(o.attrs1, in.net, Mode::first);
  if (!o.attrs2.empty()) in.attrs.mode2 = read_attributes_file(o.attrs2, in.net, Mode::second);
  if (need_model) {
    if (o.model.empty() == o.model_file.empty()) {
      throw ModelError("give exactly one of --model and --model-file");
    }
    in.spec = parse_formula(o.model.empty() ? read_model_file(o.model_file) : o.model);
  }
  return in;
}

SamplerControl sampler_control(const Options& o) {
  SamplerControl c;
  c.burn_in = o.burnin;
  c.interval = o.interval;
  c.sample_size = o.samplesize;
  c.seed = o.seed;
  const auto p = proposal_from_name(o.proposal);
  if (!p) throw ModelError("unknown proposal '" + o.proposal + "' (use tnt or uniform)");
  c.proposal = *p;
  c.chains = o.chains;
  c.validate();
  return c;
}

EstimationControl estimation_control(const Options& o) {
  EstimationControl c;
  c.sampler = sampler_control(o);
  c.max_anchors = o.max_anchors;
  c.compute_loglik = !o.no_loglik;
  c.bridge_sample_size = o.bridge_samplesize;
  c.degeneracy_is_error = o.strict_degeneracy;
  return c;
}

FitMethod fit_method(const Options& o) {
  const auto m = method_from_name(o.method);
  if (!m) throw ModelError("unknown method '" + o.method + "' (use mple or mcmcmle)");
  return *m;
}

// The resolved configuration, echoed into every output.
json config_json(const std::string& command, const Options& o, const Inputs& in) {
  json c;
  c["command"] = command;
  c["network"] = o.network;
  c["n1"] = in.net.n1();
  c["n2"] = in.net.n2();
  if (!o.attrs1.empty()) c["attrs1"] = o.attrs1;
  if (!o.attrs2.empty()) c["attrs2"] = o.attrs2;
  if (in.spec) c["model"] = format_formula(*in.spec);
  c["seed"] = o.seed;
  c["rng"] = std::string(Rng::kAlgorithm);
  c["burnin"] = sampler_control(o).resolved_burn_in(in.net.dyad_count());
  c["interval"] = o.interval;
  c["samplesize"] = o.samplesize;
  c["proposal"] = o.proposal;
  c["chains"] = o.chains;
  if (command == "fit" || command == "profile") {
    c["method"] = o.method;
    c["max_anchors"] = o.max_anchors;
    c["loglik"] = !o.no_loglik;
    if (o.bridge_samplesize) c["bridge_samplesize"] = *o.bridge_samplesize;
    c["strict_degeneracy"] = o.strict_degeneracy;
  }
  return c;
}

std::string config_header(const json& config) {
  std::string out;
  for (const auto& [key, value] : config.items()) {
    out += "# " + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  return out;
}

class Sink {
 public:
  Sink(const Options& o, std::ostream& out) : dir_(o.out), out_(out) {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw IoError("cannot create output directory " + dir_ + ": " + ec.message());
    }
  }

  /// Main output: stdout, and `name` inside --out when given.
  void primary(const std::string& name, const std::string& content) {
    out_ << content;
    file(name, content);
  }

  /// Written only when --out is given.
  void file(const std::string& name, const std::string& content) {
    if (dir_.empty()) return;
    const fs::path path = fs::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    f << content;
    if (!f) throw IoError("error writing " + path.string());
  }

  void metadata(const json& config) {
    if (dir_.empty()) return;
    json meta;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    meta["timestamp"] = stamp;
    meta["config"] = config;
    file("run.json", meta.dump(2) + "\n");
  }

 private:
  std::string dir_;
  std::ostream& out_;
};

json fit_json(const FitResult& fit) {
  json j;
  j["method"] = std::string(method_name(fit.method));
  const Eigen::VectorXd se = fit.std_errors();
  json terms = json::array();
  for (std::size_t p = 0; p < fit.names.size(); ++p) {
    const auto ip = static_cast<Eigen::Index>(p);
    const double pv = wald_p_value(fit.theta(ip), se(ip));
    json t;
    t["name"] = fit.names[p];
    t["estimate"] = fit.theta(ip);
    t["std_error"] = se(ip);
    t["mc_std_error"] = fit.mc_std_error.size() ? fit.mc_std_error(ip) : 0.0;
    t["p_value"] = std::isnan(pv) ? json(nullptr) : json(pv);
    t["stars"] = std::string(significance_stars(pv));
    terms.push_back(t);
  }
  j["terms"] = terms;
  json cov = json::array();
  for (Eigen::Index r = 0; r < fit.covariance.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < fit.covariance.cols(); ++c) row.push_back(fit.covariance(r, c));
    cov.push_back(row);
  }
  j["covariance"] = cov;
  if (fit.loglik) {
    j["loglik"] = *fit.loglik;
    j["loglik_sd"] = fit.loglik_sd;
    j["loglik_kind"] = fit.loglik_kind;
  }
  const auto& d = fit.diagnostics;
  j["diagnostics"] = {{"acceptance_rate", d.acceptance_rate},
                      {"ess", d.ess},
                      {"anchors", d.anchors},
                      {"step_norms", d.step_norms},
                      {"step_length", d.step_length},
                      {"newton_iterations", d.newton_iterations},
                      {"converged", d.converged},
                      {"warnings", d.warnings}};
  return j;
}

std::string fit_report(const FitResult& fit, const json& config) {
  std::ostringstream r;
  r << "Formula: " << config["model"].get<std::string>() << "\n";
  r << "Method:  " << method_name(fit.method) << "    seed " << config["seed"].dump() << " ("
    << config["rng"].get<std::string>() << ")\n\n";
  std::size_t width = 10;
  for (const auto& n : fit.names) width = std::max(width, n.size() + 2);
  const bool mc = fit.method == FitMethod::mcmcmle;
  r << std::left << std::setw(static_cast<int>(width)) << "" << std::right << std::setw(11)
    << "Estimate" << std::setw(12) << "Std.Error";
  if (mc) r << std::setw(12) << "MCMC s.e.";
  r << std::setw(11) << "p-value" << "\n";
  const Eigen::VectorXd se = fit.std_errors();
  for (std::size_t p = 0; p < fit.names.size(); ++p) {
    const auto ip = static_cast<Eigen::Index>(p);
    const double pv = wald_p_value(fit.theta(ip), se(ip));
    std::string pvs = std::isnan(pv) ? "NA" : pv < 1e-4 ? "<1e-04" : fixed(pv, 4);
    r << std::left << std::setw(static_cast<int>(width)) << fit.names[p] << std::right
      << std::setw(11) << fixed(fit.theta(ip)) << std::setw(12) << fixed(se(ip));
    if (mc) r << std::setw(12) << fixed(fit.mc_std_error(ip));
    r << std::setw(11) << pvs << " " << significance_stars(pv) << "\n";
  }
  r << "---\nSignif. codes: *** p < 0.0001, ** p < 0.001, * p < 0.05 (Wald)\n\n";
  if (fit.loglik) {
    r << "Log-likelihood: " << fixed(*fit.loglik);
    if (fit.loglik_kind == "bridge") r << " (sd " << fixed(fit.loglik_sd) << ", bridge sampling)";
    else if (fit.loglik_kind == "pseudo") r << " (pseudo-likelihood)";
    r << "\n";
  }
  const auto& d = fit.diagnostics;
  if (mc) {
    r << "Anchors: " << d.anchors << (d.converged ? " (converged)" : " (not converged)")
      << "    acceptance rate " << fixed(d.acceptance_rate, 3) << "\n";
    r << "Effective sample size:";
    for (double e : d.ess) r << " " << fixed(e, 0);
    r << "\n";
  }
  for (const auto& w : d.warnings) r << "Warning: " << w << "\n";
  return r.str();
}

int cmd_stats(const Options& o, Sink& sink) {
  const Inputs in = load(o, true);
  const CompiledModel model(*in.spec, in.attrs, in.net.n1(), in.net.n2());
  const StatVector s = model.eval(in.net);
  const json config = config_json("stats", o, in);
  std::string csv = config_header(config) + "statistic,value\n";
  for (std::size_t p = 0; p < s.size(); ++p) csv += csv_field(model.names()[p]) + "," + fmt(s[p]) + "\n";
  sink.primary("stats.csv", csv);
  sink.metadata(config);
  return kOk;
}

int cmd_fit(const Options& o, Sink& sink) {
  const Inputs in = load(o, true);
  const CompiledModel model(*in.spec, in.attrs, in.net.n1(), in.net.n2());
  const FitMethod method = fit_method(o);
  const json config = config_json("fit", o, in);
  const FitResult fit =
      method == FitMethod::mple ? mple(model, in.net) : mcmcmle(model, in.net, estimation_control(o));
  sink.primary("report.txt", fit_report(fit, config));
  json record;
  record["config"] = config;
  record["fit"] = fit_json(fit);
  sink.file("fit.json", record.dump(2) + "\n");
  sink.metadata(config);
  return kOk;
}

int cmd_profile(const Options& o, Sink& sink) {
  const Inputs in = load(o, true);
  const FitMethod method = fit_method(o);
  const EstimationControl control = estimation_control(o);
  std::vector<std::pair<ExponentKind, std::vector<double>>> runs;
  if (!o.alpha_grid.empty()) runs.emplace_back(ExponentKind::alpha, parse_grid(o.alpha_grid, "--alpha-grid"));
  if (!o.beta_grid.empty()) runs.emplace_back(ExponentKind::beta, parse_grid(o.beta_grid, "--beta-grid"));
  if (runs.empty()) {
    runs.emplace_back(ExponentKind::alpha, default_profile_grid());
    runs.emplace_back(ExponentKind::beta, default_profile_grid());
  }
  json config = config_json("profile", o, in);
  for (const auto& [kind, grid] : runs) {
    json g = json::array();
    for (double v : grid) g.push_back(v);
    config[std::string(exponent_name(kind)) + "_grid"] = g;
  }

  std::string csv = config_header(config) +
                    "kind,exponent,loglik,loglik_sd,statistic,coef,coef_se,coef_mcse,p_value,"
                    "stars,status,message\n";
  for (const auto& [kind, grid] : runs) {
    const auto points = profile(*in.spec, kind, grid, in.net, in.attrs, control, method);
    for (const auto& pt : points) {
      const std::string lead = std::string(exponent_name(kind)) + "," + fmt(pt.value) + ",";
      if (!pt.fit) {
        csv += lead + "NA,NA,NA,NA,NA,NA,NA,,failed," + csv_field(pt.error) + "\n";
        continue;
      }
      const FitResult& fit = *pt.fit;
      const Eigen::VectorXd se = fit.std_errors();
      const std::string ll = fit.loglik ? fmt(*fit.loglik) : "NA";
      std::string message;
      for (const auto& w : fit.diagnostics.warnings) message += (message.empty() ? "" : "; ") + w;
      for (std::size_t j : pt.homophily_index) {
        const auto ij = static_cast<Eigen::Index>(j);
        const double pv = wald_p_value(fit.theta(ij), se(ij));
        csv += lead + ll + "," + fmt(fit.loglik_sd) + "," + csv_field(fit.names[j]) + "," +
               fmt(fit.theta(ij)) + "," + fmt(se(ij)) + "," + fmt(fit.mc_std_error(ij)) + "," +
               fmt(pv) + "," + std::string(significance_stars(pv)) + "," +
               (fit.diagnostics.converged ? "ok" : "unconverged") + "," + csv_field(message) + "\n";
      }
    }
  }
  sink.primary("profile.csv", csv);
  sink.metadata(config);
  return kOk;
}

int cmd_project(const Options& o, Sink& sink) {
  if (o.mode != 1 && o.mode != 2) throw ModelError("--mode must be 1 or 2");
  const Inputs in = load(o, false);
  const WeightedProjection proj = project(in.net, o.mode == 1 ? Mode::first : Mode::second);
  std::string text;
  for (const auto& [pair, w] : proj.weights) {
    text += std::to_string(pair.first) + " " + std::to_string(pair.second) + " " + std::to_string(w) + "\n";
  }
  sink.primary("projection.txt", text);
  sink.metadata(config_json("project", o, in));
  return kOk;
}

int cmd_simulate(const Options& o, Sink& sink) {
  const Inputs in = load(o, true);
  const CompiledModel model(*in.spec, in.attrs, in.net.n1(), in.net.n2());
  if (o.theta.empty()) throw ModelError("--theta is required");
  const std::vector<double> theta = parse_list(o.theta, "--theta");
  json config = config_json("simulate", o, in);
  config["theta"] = theta;
  const StatSample sample = simulate(model, theta, in.net, sampler_control(o));
  std::ostringstream csv;
  csv << config_header(config);
  for (std::size_t p = 0; p < sample.names.size(); ++p) csv << (p ? "," : "") << csv_field(sample.names[p]);
  csv << "\n";
  for (Eigen::Index r = 0; r < sample.stats.rows(); ++r) {
    for (Eigen::Index c = 0; c < sample.stats.cols(); ++c) {
      csv << (c ? "," : "") << fmt(sample.stats(r, c));
    }
    csv << "\n";
  }
  sink.primary("sample.csv", csv.str());
  if (!o.final_network.empty()) {
    std::ofstream f(o.final_network);
    if (!f) throw IoError("cannot write " + o.final_network);
    write_edge_list(f, *sample.final_network);
  }
  std::ostringstream final_net;
  write_edge_list(final_net, *sample.final_network);
  sink.file("final.edgelist", final_net.str());
  sink.metadata(config);
  return kOk;
}

int cmd_oracle(const Options& o, Sink& sink) {
  const Inputs in = load(o, true);
  const ExactModel em(CompiledModel(*in.spec, in.attrs, in.net.n1(), in.net.n2()), o.max_dyads);
  json config = config_json("oracle", o, in);
  config["query"] = o.query;
  std::ostringstream csv;
  if (o.query == "mle") {
    const ExactMle m = exact_mle(em, in.net);
    csv << config_header(config) << "statistic,estimate,std_error\n";
    for (std::size_t p = 0; p < em.dimension(); ++p) {
      const auto ip = static_cast<Eigen::Index>(p);
      csv << csv_field(em.names()[p]) << "," << fmt(m.theta(ip)) << ","
          << fmt(std::sqrt(std::max(0.0, m.covariance(ip, ip)))) << "\n";
    }
    csv << "# loglik: " << fmt(m.loglik) << "\n";
    sink.primary("oracle_mle.csv", csv.str());
  } else if (o.query == "kappa" || o.query == "distribution") {
    if (o.theta.empty()) throw ModelError("--theta is required for query " + o.query);
    const std::vector<double> theta = parse_list(o.theta, "--theta");
    config["theta"] = theta;
    csv << config_header(config);
    if (o.query == "kappa") {
      csv << "log_kappa,loglik\n"
          << fmt(exact_log_kappa(em, theta)) << "," << fmt(exact_loglik(em, theta, in.net)) << "\n";
      sink.primary("oracle_kappa.csv", csv.str());
    } else {
      const ExactDistribution dist = exact_dyad_distribution(em, theta);
      csv << "state,edges,probability\n";
      for (std::size_t s = 0; s < dist.probabilities.size(); ++s) {
        std::string edges;
        for (std::size_t b = 0; b < em.dyad_count(); ++b) {
          if ((s >> b) & 1U) {
            const Dyad d = in.net.dyad_at(b);
            edges += (edges.empty() ? "" : " ") + std::to_string(d.i) + "-" + std::to_string(d.k);
          }
        }
        csv << s << "," << edges << "," << fmt(dist.probabilities[s]) << "\n";
      }
      std::ostringstream marg;
      marg << config_header(config) << "i,k,probability\n";
      for (std::size_t b = 0; b < em.dyad_count(); ++b) {
        const Dyad d = in.net.dyad_at(b);
        marg << d.i << "," << d.k << "," << fmt(dist.dyad_marginals[b]) << "\n";
      }
      sink.primary("oracle_distribution.csv", csv.str());
      sink.file("oracle_marginals.csv", marg.str());
    }
  } else {
    throw ModelError("unknown oracle query '" + o.query + "' (use kappa, mle or distribution)");
  }
  sink.metadata(config);
  return kOk;
}

void add_inputs(CLI::App* sub, Options& o, bool model) {
  sub->add_option("--network", o.network, "Edge list file")->required();
  sub->add_option("--attrs1", o.attrs1, "Mode-1 attribute table");
  sub->add_option("--attrs2", o.attrs2, "Mode-2 attribute table");
  if (model) {
    sub->add_option("--model", o.model, "Model formula");
    sub->add_option("--model-file", o.model_file, "File holding the model formula");
  }
  sub->add_option("--out", o.out, "Output directory");
}

void add_sampler(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "Top-level random seed");
  sub->add_option("--burnin", o.burnin, "Burn-in proposals (default 2^14 per thousand dyads)");
  sub->add_option("--interval", o.interval, "Proposals between retained draws");
  sub->add_option("--samplesize", o.samplesize, "Retained draws");
  sub->add_option("--proposal", o.proposal, "tnt or uniform");
  sub->add_option("--chains", o.chains, "Parallel chains");
}

void add_estimation(CLI::App* sub, Options& o) {
  sub->add_option("--method", o.method, "mple or mcmcmle");
  sub->add_option("--max-anchors", o.max_anchors, "Maximum MCMC-MLE anchors");
  sub->add_flag("--no-loglik", o.no_loglik, "Skip the bridge-sampled log-likelihood");
  sub->add_option("--bridge-samplesize", o.bridge_samplesize, "Draws per bridge");
  sub->add_flag("--strict-degeneracy", o.strict_degeneracy, "Treat degeneracy warnings as errors");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bipartite exponential random graph models with alpha/beta homophily", "bergm"};
  app.require_subcommand(1);

  auto* stats = app.add_subcommand("stats", "Evaluate model statistics on a network");
  add_inputs(stats, o, true);

  auto* fit = app.add_subcommand("fit", "Fit a model by MPLE or MCMC-MLE");
  add_inputs(fit, o, true);
  add_sampler(fit, o);
  add_estimation(fit, o);

  auto* prof = app.add_subcommand("profile", "Profile likelihood over nodematch exponents");
  add_inputs(prof, o, true);
  add_sampler(prof, o);
  add_estimation(prof, o);
  prof->add_option("--alpha-grid", o.alpha_grid, "Comma-separated alpha values or 'default'");
  prof->add_option("--beta-grid", o.beta_grid, "Comma-separated beta values or 'default'");

  auto* proj = app.add_subcommand("project", "One-mode projection with two-path weights");
  add_inputs(proj, o, false);
  proj->add_option("--mode", o.mode, "1 or 2");

  auto* sim = app.add_subcommand("simulate", "Draw statistics from the model by MCMC");
  add_inputs(sim, o, true);
  add_sampler(sim, o);
  sim->add_option("--theta", o.theta, "Comma-separated parameter vector");
  sim->add_option("--final-network", o.final_network, "Write the final network here");

  auto* orc = app.add_subcommand("oracle", "Exact enumeration on tiny networks");
  add_inputs(orc, o, true);
  orc->add_option("--query", o.query, "kappa, mle or distribution");
  orc->add_option("--theta", o.theta, "Comma-separated parameter vector");
  orc->add_option("--max-dyads", o.max_dyads, "Enumeration cap (at most 22)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Sink sink(o, out);
    if (stats->parsed()) return cmd_stats(o, sink);
    if (fit->parsed()) return cmd_fit(o, sink);
    if (prof->parsed()) return cmd_profile(o, sink);
    if (proj->parsed()) return cmd_project(o, sink);
    if (sim->parsed()) return cmd_simulate(o, sink);
    if (orc->parsed()) return cmd_oracle(o, sink);
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const EstimationError& e) {
    err << "estimation failed: " << e.what() << "\n";
    return kEstimation;
  } catch (const DegeneracyError& e) {
    err << "degeneracy: " << e.what() << "\n";
    return kDegeneracy;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace bergm::cli
