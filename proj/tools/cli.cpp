#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "imconf/dist.hpp"
#include "imconf/experiments.hpp"
#include "imconf/io.hpp"
#include "imconf/models/behrens_fisher.hpp"
#include "imconf/models/binomial.hpp"
#include "imconf/models/dkw.hpp"
#include "imconf/models/fieller.hpp"
#include "imconf/models/normal.hpp"
#include "imconf/models/uniform_loc.hpp"

namespace imconf::cli {

namespace {

namespace bf = models::behrens_fisher;
namespace dk = models::dkw;
namespace ul = models::uniform_loc;

struct Common {
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::size_t grid = 0;
  std::string out = "-";
  std::string format = "csv";
  std::string config;
};

// key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParameterError(path + ":" + std::to_string(lineno) + ": expected key=value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

// Appends config entries as flags unless the flag is already present, so
// command-line values take precedence.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  for (const auto& [k, v] : read_config(path)) {
    const std::string flag = "--" + k;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) {
      args.push_back(flag);
      args.push_back(v);
    }
  }
  return args;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) throw ParameterError("bad number '" + cell + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw ParameterError("empty list");
  return out;
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "imconf";
  for (const auto& a : args) s += " " + a;
  return s;
}

class Runner {
 public:
  Runner(std::ostream& out) : out_(out) {}

  int dispatch(const std::vector<std::string>& raw) {
    CLI::App app{"Inferential models from confidence regions: experiments and audits", "imconf"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    auto add_common = [&](CLI::App* sub, std::size_t reps, std::size_t grid) {
      c_.reps = reps;
      c_.grid = grid;
      sub->add_option("--reps", c_.reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
      sub->add_option("--seed", c_.seed, "Seed (default: $IMCONF_SEED, else 0)");
      if (grid > 0) sub->add_option("--grid", c_.grid, "Grid points")->check(CLI::Range(2, 1000000));
      sub->add_option("--out", c_.out, "Output path, '-' for stdout");
      sub->add_option("--format", c_.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
      sub->add_option("--config", c_.config, "key=value file; flags take precedence");
    };

    // Defaults are per subcommand; add_common is called for the one parsed.
    std::vector<std::string> args = merge_config(raw);
    const std::string name = args.empty() ? "" : args.front();
    std::size_t reps = 10000, grid = 0;
    if (name == "fig1") reps = 5000;
    if (name == "binom") grid = 512;
    if (name == "bf") reps = 100000, grid = 201;
    if (name == "dkw") reps = 100000;

    auto* fig1 = app.add_subcommand("fig1", "Draws of the |theta| confidence-distribution CDF versus uniform");
    auto* binom = app.add_subcommand("binom", "Clopper-Pearson and IM contours for binomial data");
    auto* bfc = app.add_subcommand("bf", "Behrens-Fisher contours: Hsu-Scheffe, per-lambda, marginal");
    auto* dkw = app.add_subcommand("dkw", "DKW band and the alpha index / plausibility at the lower band");
    auto* fie = app.add_subcommand("fieller", "Coverage of the Fieller-Creasy integrated-CD interval");
    auto* uni = app.add_subcommand("uniform", "Uniform-location model: compatibility and coverage");
    auto* aud = app.add_subcommand("audit", "Validity audit of a shipped model's fused contour");
    auto* cov = app.add_subcommand("coverage", "Coverage probability of a model's confidence family");
    for (auto* s : {fig1, binom, bfc, dkw, fie, uni, aud, cov})
      if (s->get_name() == name) add_common(s, reps, grid);

    double mean = 0.5, phi = 0.5;
    fig1->add_option("--mean", mean, "True theta");
    fig1->add_option("--phi", phi, "Evaluation point of the CD of |theta|");

    int n = 25, x = 17;
    binom->add_option("--n", n, "Trials")->check(CLI::PositiveNumber);
    binom->add_option("--x", x, "Successes");

    std::string data;
    std::size_t lambdas = 101;
    bfc->add_option("--data", data, "CSV: n,mean,variance rows or group,value rows (default: route travel times)");
    bfc->add_option("--lambdas", lambdas, "Lambda grid points")->check(CLI::Range(1, 100000));

    double alpha = 0.05;
    std::size_t dkw_n = 799;
    dkw->add_option("--data", data, "CSV with one observation per row (default: synthetic Exp(1) sample)");
    dkw->add_option("--n", dkw_n, "Synthetic sample size")->check(CLI::PositiveNumber);
    dkw->add_option("--alpha", alpha, "Band level");

    std::string theta = "1,20";
    fie->add_option("--theta", theta, "theta1,theta2");
    fie->add_option("--alpha", alpha, "Level");

    int un = 10;
    std::string utheta = "0";
    uni->add_option("--n", un, "Sample size")->check(CLI::Range(2, 1000000));
    uni->add_option("--theta", utheta, "Location");
    uni->add_option("--alpha", alpha, "Level");

    std::string model = "binomial", thetas, alphas;
    int model_n = 0;
    std::size_t table_reps = 100000;
    aud->add_option("--model", model, "normal, binomial, uniform, bf or dkw");
    aud->add_option("--n", model_n, "Sample size (0: model default)");
    aud->add_option("--thetas", thetas, "Semicolon-separated theta points, coordinates comma-separated");
    aud->add_option("--alphas", alphas, "Comma-separated levels");
    aud->add_option("--table-reps", table_reps, "Draws for Monte Carlo null tables")->check(CLI::PositiveNumber);

    std::string ctheta;
    cov->add_option("--model", model, "normal, binomial, uniform, bf or fieller");
    cov->add_option("--n", model_n, "Sample size (0: model default)");
    cov->add_option("--theta", ctheta, "Comma-separated theta (default: model default)");
    cov->add_option("--alpha", alpha, "Level");

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out_ << kVersion << '\n';
      return kOk;
    } catch (const CLI::ParseError& e) {
      throw ParameterError(e.what());
    }

    seed_source_ = "flag";
    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--seed") == 0) {
      if (const char* env = std::getenv("IMCONF_SEED")) {
        char* end = nullptr;
        c_.seed = std::strtoull(env, &end, 10);
        if (*env == '\0' || *end != '\0') throw ParameterError("IMCONF_SEED must be an unsigned integer");
        seed_source_ = "env";
      } else {
        seed_source_ = "default";
      }
    }
    table_.metadata = {{"command", join(raw)}, {"subcommand", sub->get_name()}, {"version", kVersion},
                       {"seed", std::to_string(c_.seed)},   {"seed_source", seed_source_},
                       {"reps", std::to_string(c_.reps)}};
    for (const auto* opt : sub->get_options()) {
      const std::string key = opt->get_single_name();
      if (key == "help" || key == "seed" || key == "reps" || key == "config") continue;
      std::string val = opt->results().empty() ? opt->get_default_str() : opt->results().front();
      table_.metadata.emplace_back(key, val);
    }
    if (!c_.config.empty()) table_.metadata.emplace_back("config", c_.config);

    const MCConfig mc{c_.reps, c_.seed, 0};
    const std::string sname = sub->get_name();
    if (sname == "fig1") run_fig1(mean, phi, mc);
    if (sname == "binom") run_binom(n, x);
    if (sname == "bf") run_bf(data, lambdas, mc);
    if (sname == "dkw") run_dkw(data, dkw_n, alpha, mc);
    if (sname == "fieller") run_fieller(parse_list(theta), alpha, mc);
    if (sname == "uniform") run_uniform(un, parse_list(utheta), alpha, mc);
    if (sname == "audit") return run_audit(model, model_n, thetas, alphas, table_reps, mc);
    if (sname == "coverage") run_coverage(model, model_n, ctheta, alpha, mc);
    emit(c_.format == "json" ? table_.to_json() : table_.to_csv());
    return kOk;
  }

 private:
  void emit(const std::string& content) {
    if (c_.out.empty() || c_.out == "-")
      out_ << content;
    else
      io::write_atomic(c_.out, content);
  }

  void run_fig1(double mean, double phi, const MCConfig& mc) {
    std::vector<double> draws = models::normal::cd_abs_draws(mean, phi, mc);
    const double ks = ks_uniform(draws);
    std::sort(draws.begin(), draws.end());
    table_.metadata.emplace_back("ks_uniform", io::format_number(ks));
    table_.columns = {"cd_value", "uniform_position", "exact_cdf"};
    const double n = static_cast<double>(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i)
      table_.rows.push_back({draws[i], (static_cast<double>(i) + 0.5) / n,
                             models::normal::cd_abs_value_law(draws[i], mean, phi)});
  }

  void run_binom(int n, int x) {
    models::binomial::BinomialData{n, x}.validate();
    table_.columns = {"theta", "cp_contour", "im_contour"};
    const GridSpec g = GridSpec::line(0.0, 1.0, c_.grid);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double t = g.point(i)[0];
      table_.rows.push_back({t, models::binomial::cp_contour(n, x, t), models::binomial::im_contour(n, x, t)});
    }
  }

  void run_bf(const std::string& data, std::size_t nl, const MCConfig& mc) {
    const bf::BFData x = data.empty() ? bf::lehmann_data() : io::read_bf_csv(data);
    x.validate();
    const bf::LambdaTable table(x.n1, x.n2, bf::LambdaTable::default_grid(nl), mc);
    const Interval wide = bf::hs_interval(x, 0.01);
    const double half = 1.25 * (wide.hi - wide.lo) / 2.0;
    table_.columns = {"phi", "hs_contour"};
    for (double l : table.lambdas()) table_.columns.push_back("lambda_" + io::format_number(l));
    table_.columns.push_back("marginal");
    const GridSpec g = GridSpec::line(x.d() - half, x.d() + half, c_.grid);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double p = g.point(i)[0];
      std::vector<double> row{p, bf::hs_contour(x, p)};
      for (std::size_t k = 0; k < table.size(); ++k) row.push_back(bf::bf_lambda_plaus(table, x, p, k));
      row.push_back(bf::bf_marginal_contour(table, x, p));
      table_.rows.push_back(std::move(row));
    }
  }

  void run_dkw(const std::string& data, std::size_t n, double alpha, const MCConfig& mc) {
    const dk::EmpiricalSample x = data.empty() ? dk::synthetic_sample(n) : dk::EmpiricalSample(io::read_values_csv(data));
    const dk::Band band = dk::dkw_band(x, alpha);
    const dk::KsNullTable null(x.size(), mc);
    const dk::DkwResult r = dk::dkw_contour(x, band.lower, null);
    table_.metadata.emplace_back("sample_size", std::to_string(x.size()));
    table_.metadata.emplace_back("delta", io::format_number(band.delta));
    table_.metadata.emplace_back("alpha_index_lower", io::format_number(r.alpha_index));
    table_.metadata.emplace_back("plaus_lower", io::format_number(r.plaus));
    table_.metadata.emplace_back("plaus_lower_se", io::format_number(r.se));
    table_.columns = {"x", "ecdf", "lower", "upper"};
    for (double v : x.values()) table_.rows.push_back({v, x.ecdf(v), band.lower.value(v), band.upper.value(v)});
  }

  void run_fieller(const std::vector<double>& th, double alpha, const MCConfig& mc) {
    if (th.size() != 2) throw ParameterError("--theta needs two values");
    const Estimate e = experiments::coverage("fieller", 0, ParamPoint{th[0], th[1]}, alpha, mc);
    table_.columns = {"theta1", "theta2", "alpha", "coverage", "se", "reps"};
    table_.rows.push_back({th[0], th[1], alpha, e.value, e.se, static_cast<double>(e.reps)});
  }

  void run_uniform(int n, const std::vector<double>& th, double alpha, const MCConfig& mc) {
    if (th.size() != 1) throw ParameterError("--theta needs one value");
    const ParamPoint theta{th[0]};
    const Estimate e = experiments::coverage("uniform", n, theta, alpha, mc);
    // Compatibility at one data set drawn from theta.
    CounterRng rng(mc.seed, 0x756e69);
    const ul::UnifData x = ul::sampling_model(n).draw(theta, rng);
    const auto rep = check_compatibility(ul::association(n), ul::random_set(), x, theta, AlphaLevel(alpha),
                                         mc.with_stream(1).with_reps(std::min<std::size_t>(mc.reps, 10000)),
                                         {ul::special_point(x)});
    table_.columns = {"n", "theta", "alpha", "x1", "x2", "coverage", "se", "compatible", "witnesses"};
    table_.rows.push_back({static_cast<double>(n), th[0], alpha, x.x1, x.x2, e.value, e.se,
                           rep.status == Compatibility::compatible ? 1.0 : 0.0,
                           static_cast<double>(rep.witnesses.size())});
  }

  int run_audit(const std::string& model, int n, const std::string& thetas, const std::string& alphas,
                std::size_t table_reps, const MCConfig& mc) {
    experiments::AuditSetup s;
    s.model = model;
    s.n = n;
    s.mc = mc;
    s.table_reps = table_reps;
    if (!alphas.empty()) s.alphas = parse_list(alphas);
    if (!thetas.empty()) {
      std::stringstream ss(thetas);
      std::string cell;
      while (std::getline(ss, cell, ';')) s.thetas.push_back(ParamPoint(parse_list(cell)));
    }
    const AuditReport r = experiments::fused_validity_audit(s);
    table_.metadata.emplace_back("flagged", std::to_string(r.flagged));
    table_.metadata.emplace_back("worst_excess", io::format_number(r.worst_excess));
    if (c_.format == "json") {
      nlohmann::ordered_json j;
      j["metadata"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : table_.metadata) j["metadata"][k] = v;
      j["report"] = nlohmann::ordered_json::parse(r.to_json());
      emit(j.dump(2) + "\n");
    } else {
      std::string text;
      for (const auto& [k, v] : table_.metadata) text += "# " + k + ": " + v + "\n";
      emit(text + r.to_csv());
    }
    return kOk;
  }

  void run_coverage(const std::string& model, int n, const std::string& theta, double alpha, const MCConfig& mc) {
    const ParamPoint th = theta.empty() ? experiments::default_thetas(model).front() : ParamPoint(parse_list(theta));
    const Estimate e = experiments::coverage(model, n, th, alpha, mc);
    table_.columns = {"alpha", "coverage", "se", "reps"};
    table_.rows.push_back({alpha, e.value, e.se, static_cast<double>(e.reps)});
  }

  std::ostream& out_;
  Common c_;
  io::Table table_;
  std::string seed_source_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Runner r(out);
    return r.dispatch(args);
  } catch (const ParameterError& e) {
    err << "imconf: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "imconf: numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    err << "imconf: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "imconf: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace imconf::cli
