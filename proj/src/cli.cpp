#include "evalues/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "evalues/calibration.hpp"
#include "evalues/cross_merging.hpp"
#include "evalues/e_merging.hpp"
#include "evalues/multiple_testing.hpp"
#include "evalues/oracle.hpp"
#include "evalues/p_merging.hpp"
#include "evalues/simulation.hpp"

namespace evalues {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_scalar(std::ostream& out, double v) { out << fmt17(v) << '\n'; }

void print_vector(std::ostream& out, std::span<const double> v) {
  for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << fmt17(v[i]);
  out << '\n';
}

std::vector<double> parse_tokens(const std::string& text) {
  std::vector<double> values;
  std::string token;
  size_t position = 0;
  auto flush = [&] {
    if (token.empty()) return;
    ++position;
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || std::isnan(v) || std::isinf(v))
      throw UsageError("invalid number '" + token + "' at position " +
                       std::to_string(position));
    values.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
      flush();
    else
      token.push_back(c);
  }
  flush();
  return values;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  for (char c : text) {
    if (c == ',') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

CalibratorSpec parse_calibrator_spec(const std::string& text) {
  std::string kind = text;
  double kappa = 1.0;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    kind = text.substr(0, colon);
    kappa = std::stod(text.substr(colon + 1));
  }
  if (kind == "power") return CalibratorSpec::power(kappa);
  if (kind == "integrated") return CalibratorSpec::integrated();
  if (kind == "h") return CalibratorSpec::h(kappa);
  if (kind == "f") return CalibratorSpec::f(kappa);
  throw UsageError("unknown calibrator spec '" + text +
                   "' (expected power:K, integrated, h:K, or f:K)");
}

struct Options {
  std::string method;
  double kappa = 0.5;
  double lambda = 0.5;
  double r = 1.0;
  int k = 1;
  std::string weights;
  std::string calibrators;
  bool literal = false;
  bool generic = false;
  std::string merge_class;
  int trials = 10000;
  uint64_t seed = 1;
  // simulate
  std::string experiment = "combining";
  double delta = -0.1;
  int n_obs = 1000;
  int seeds = 100;
  double fraction_alt = 1.0;
  int n_hypotheses = 20;
  int n_false = 10;
  std::string methods;
  std::string out_path;
  std::vector<std::string> inputs;
};

int do_calibrate(const Options& o, const std::vector<double>& values, std::ostream& out) {
  for (double p : values) {
    double e;
    if (o.method == "power") e = calibrate_power(p, o.kappa);
    else if (o.method == "integrated") e = calibrate_integrated(p);
    else if (o.method == "h") e = calibrate_h(p, o.kappa);
    else if (o.method == "f") e = calibrate_f_kappa(p, o.kappa);
    else if (o.method == "vs") e = vs_bound(p);  // benchmark only, not a calibrator
    else throw UsageError("unknown calibrate method '" + o.method + "'");
    print_scalar(out, e);
  }
  return 0;
}

int do_merge_e(const Options& o, const std::vector<double>& e, std::ostream& out) {
  double v;
  if (o.method == "average") v = arithmetic_mean(e);
  else if (o.method == "product") v = product(e);
  else if (o.method == "mixture") v = convex_mixture(o.lambda, e);
  else if (o.method == "u-stat") v = u_statistic(o.k, e);
  else if (o.method == "u-mix") v = u_mixture(parse_tokens(o.weights), e);
  else if (o.method == "simes") v = e_simes(e);
  else if (o.method == "ruger") v = ruger_e(o.k, e);
  else if (o.method == "m-family") v = m_family_e(o.r, e);
  else throw UsageError("unknown merge-e method '" + o.method + "'");
  print_scalar(out, v);
  return 0;
}

int do_merge_p(const Options& o, const std::vector<double>& p, std::ostream& out) {
  double v;
  if (o.method == "bonferroni") v = bonferroni(p);
  else if (o.method == "ruger") v = ruger_p(o.k, p);
  else if (o.method == "simes") v = simes(p);
  else if (o.method == "fisher") v = fisher(p);
  else if (o.method == "maximum") v = maximum(p);
  else throw UsageError("unknown merge-p method '" + o.method + "'");
  print_scalar(out, v);
  return 0;
}

int do_cross(const Options& o, const std::vector<double>& values, std::ostream& out) {
  double v;
  if (o.method == "e2p") v = e_to_p_merge(values);
  else if (o.method == "p2e") v = p_to_e_merge(o.kappa, values);
  else if (o.method == "ville") v = ville_se_to_p(values);
  else if (o.method == "mix") {
    std::vector<CalibratorSpec> specs;
    for (const auto& s : split_csv(o.calibrators)) specs.push_back(parse_calibrator_spec(s));
    v = p_to_e_mixture(parse_tokens(o.weights), specs, values);
  } else {
    throw UsageError("unknown cross method '" + o.method + "'");
  }
  print_scalar(out, v);
  return 0;
}

int do_adjust(const Options& o, const std::vector<double>& values, std::ostream& out) {
  if (o.method == "average") print_vector(out, adjust_e_average(values).adjusted);
  else if (o.method == "product") print_vector(out, adjust_e_product(values, o.literal).adjusted);
  else if (o.method == "holm") print_vector(out, holm_adjust(values).adjusted);
  else if (o.method == "hommel") print_vector(out, hommel_adjust(values).adjusted);
  else throw UsageError("unknown adjust method '" + o.method + "'");
  return 0;
}

int do_fact(const Options& o, const std::vector<double>& p, std::ostream& out) {
  AdjustedPValues adj;
  if (o.method == "fisher" && !o.generic) {
    adj = fact_fisher(p);
  } else {
    std::function<double(std::span<const double>)> F;
    if (o.method == "bonferroni") F = [](std::span<const double> q) { return bonferroni(q); };
    else if (o.method == "simes") F = [](std::span<const double> q) { return simes(q); };
    else if (o.method == "fisher") F = [](std::span<const double> q) { return fisher(q); };
    else if (o.method == "maximum") F = [](std::span<const double> q) { return maximum(q); };
    else throw UsageError("unknown fact method '" + o.method + "'");
    adj = fact_generic(F, p);
  }
  print_vector(out, adj.adjusted);
  return 0;
}

int do_validate(const Options& o, std::ostream& out) {
  const MergeFunction& fn = find_merge_function(o.method);
  MergeClass cls = fn.merge_class;
  if (!o.merge_class.empty()) {
    if (o.merge_class == "arbitrary") cls = MergeClass::arbitrary;
    else if (o.merge_class == "sequential") cls = MergeClass::sequential;
    else if (o.merge_class == "independent") cls = MergeClass::independent;
    else throw UsageError("unknown merge class '" + o.merge_class + "'");
  }
  ValidityResult res = check_e_merging_validity(fn.fn, cls, o.trials, o.seed);
  out << fn.name << ": " << res.describe() << '\n';
  return res.pass ? 0 : 1;
}

int do_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  SeriesTable table;
  if (o.experiment == "combining") {
    CombiningConfig cfg;
    cfg.delta = o.delta;
    cfg.n_obs = o.n_obs;
    cfg.n_seeds = o.seeds;
    cfg.fraction_alternative = o.fraction_alt;
    cfg.methods = o.methods.empty()
                      ? std::vector<std::string>{"product-lr", "universal",
                                                 "fisher-recip", "fisher-vs"}
                      : split_csv(o.methods);
    table = run_combining_experiment(cfg, o.seed);
  } else if (o.experiment == "multiple") {
    MultipleConfig cfg;
    cfg.n_hypotheses = o.n_hypotheses;
    cfg.n_false = o.n_false;
    cfg.delta = o.delta;
    cfg.n_seeds = o.seeds;
    cfg.methods = o.methods.empty()
                      ? std::vector<std::string>{"avg-adjust", "product-adjust",
                                                 "holm", "hommel", "fact-fisher"}
                      : split_csv(o.methods);
    table = run_multiple_experiment(cfg, o.seed);
  } else {
    throw UsageError("unknown experiment '" + o.experiment + "'");
  }
  if (o.out_path.empty()) {
    write_csv(table, out);
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      err << "cannot open output file " << o.out_path << '\n';
      return 2;
    }
    write_csv(table, f);
  }
  return 0;
}

}  // namespace

std::vector<double> read_values(const std::vector<std::string>& inputs,
                                std::istream& stdin_stream) {
  std::string text;
  if (inputs.size() == 1 && inputs[0] == "-") {
    std::ostringstream ss;
    ss << stdin_stream.rdbuf();
    text = ss.str();
  } else if (inputs.size() == 1 && !inputs[0].empty() &&
             std::filesystem::exists(inputs[0]) &&
             std::filesystem::is_regular_file(inputs[0])) {
    std::ifstream f(inputs[0]);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else {
    for (const auto& s : inputs) {
      text += s;
      text += ' ';
    }
  }
  std::vector<double> values = parse_tokens(text);
  if (values.empty()) throw UsageError("empty input: no values to process");
  return values;
}

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"e-value calibration, merging, multiple testing, and simulation"};
  app.require_subcommand(1);
  Options o;

  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("values", o.inputs, "input values, a file path, or - for stdin");
  };

  CLI::App* calibrate = app.add_subcommand("calibrate", "turn p-values into e-values");
  calibrate->add_option("--method", o.method, "power|integrated|h|f|vs")->required();
  calibrate->add_option("--kappa", o.kappa, "calibrator parameter");
  add_inputs(calibrate);

  CLI::App* e2p = app.add_subcommand("e2p", "e-to-p calibration min(1, 1/e)");
  add_inputs(e2p);

  CLI::App* jeffreys = app.add_subcommand("jeffreys", "Jeffreys evidence category");
  add_inputs(jeffreys);

  CLI::App* merge_e = app.add_subcommand("merge-e", "merge e-values");
  merge_e->add_option("--method", o.method,
                      "average|product|mixture|u-stat|u-mix|simes|ruger|m-family")
      ->required();
  merge_e->add_option("--lambda", o.lambda, "mixture weight on the constant 1");
  merge_e->add_option("--k", o.k, "order index for ruger, subset size for u-stat");
  merge_e->add_option("--r", o.r, "m-family exponent (inf and -inf accepted)");
  merge_e->add_option("--weights", o.weights, "comma-separated u-mix weights over sizes 0..K");
  add_inputs(merge_e);

  CLI::App* merge_p = app.add_subcommand("merge-p", "merge p-values");
  merge_p->add_option("--method", o.method, "bonferroni|ruger|simes|fisher|maximum")
      ->required();
  merge_p->add_option("--k", o.k, "order index for ruger");
  add_inputs(merge_p);

  CLI::App* cross = app.add_subcommand("cross", "cross-merge between e- and p-values");
  cross->add_option("--method", o.method, "e2p|p2e|ville|mix")->required();
  cross->add_option("--kappa", o.kappa, "power calibrator parameter for p2e");
  cross->add_option("--weights", o.weights, "comma-separated mixture weights");
  cross->add_option("--calibrators", o.calibrators,
                    "per-coordinate calibrators for mix, e.g. power:0.5,integrated");
  add_inputs(cross);

  CLI::App* adjust = app.add_subcommand("adjust", "adjust values for multiple testing");
  adjust->add_option("--method", o.method, "average|product|holm|hommel")->required();
  adjust->add_flag("--pseudocode-literal", o.literal,
                   "for product: multiply every e_k by the full product of entries below 1");
  add_inputs(adjust);

  CLI::App* fact = app.add_subcommand("fact", "fast closed testing of p-values");
  fact->add_option("--method", o.method, "bonferroni|simes|fisher|maximum")->required();
  fact->add_flag("--generic", o.generic,
                 "route fisher through the generic sweep instead of the suffix-sum form");
  add_inputs(fact);

  CLI::App* validate = app.add_subcommand("validate", "exact-expectation validity check");
  validate->add_option("--method", o.method, "catalogue name, e.g. average or product")
      ->required();
  validate->add_option("--class", o.merge_class, "arbitrary|sequential|independent");
  validate->add_option("--trials", o.trials, "number of sampled couplings");
  validate->add_option("--seed", o.seed, "RNG seed");

  CLI::App* simulate = app.add_subcommand("simulate", "seeded Gaussian experiments, CSV output");
  simulate->add_option("--experiment", o.experiment, "combining|multiple");
  simulate->add_option("--delta", o.delta, "alternative mean");
  simulate->add_option("--n-obs", o.n_obs, "observations per seed (combining)");
  simulate->add_option("--seeds", o.seeds, "number of seeds");
  simulate->add_option("--seed", o.seed, "base seed");
  simulate->add_option("--fraction-alt", o.fraction_alt,
                       "leading fraction of observations drawn from the alternative");
  simulate->add_option("--n-hypotheses", o.n_hypotheses, "hypothesis count (multiple)");
  simulate->add_option("--n-false", o.n_false, "leading false-null count (multiple)");
  simulate->add_option("--method", o.methods, "comma-separated method columns");
  simulate->add_option("--out", o.out_path, "CSV output path (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("evtool");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (app.got_subcommand(calibrate))
      return do_calibrate(o, read_values(o.inputs, in), out);
    if (app.got_subcommand(e2p)) {
      for (double e : read_values(o.inputs, in)) print_scalar(out, e_to_p(e));
      return 0;
    }
    if (app.got_subcommand(jeffreys)) {
      for (double e : read_values(o.inputs, in))
        out << jeffreys_label(jeffreys_category(e)) << '\n';
      return 0;
    }
    if (app.got_subcommand(merge_e)) return do_merge_e(o, read_values(o.inputs, in), out);
    if (app.got_subcommand(merge_p)) return do_merge_p(o, read_values(o.inputs, in), out);
    if (app.got_subcommand(cross)) return do_cross(o, read_values(o.inputs, in), out);
    if (app.got_subcommand(adjust)) return do_adjust(o, read_values(o.inputs, in), out);
    if (app.got_subcommand(fact)) return do_fact(o, read_values(o.inputs, in), out);
    if (app.got_subcommand(validate)) return do_validate(o, out);
    if (app.got_subcommand(simulate)) return do_simulate(o, out, err);
    err << "no subcommand given\n";
    return 2;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 1;
  }
}

}  // namespace evalues
