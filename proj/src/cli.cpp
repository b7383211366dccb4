#include "dagum/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dagum/classify.hpp"
#include "dagum/fields.hpp"
#include "dagum/io.hpp"
#include "dagum/kernels.hpp"
#include "dagum/models.hpp"
#include "dagum/numerics/optimize.hpp"
#include "dagum/numerics/quadrature.hpp"

namespace dagum::cli {

namespace {

using io::CsvTable;
using io::format_double;
using models::Model;
using models::ModelKind;

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by figure1 after the partial file has been written.
class PartialOutput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Params {
  std::map<std::string, double> values;

  double get(const std::string& name) const {
    const auto it = values.find(name);
    if (it == values.end()) throw ParameterError("missing --" + name);
    return it->second;
  }
};

void add_param_options(CLI::App* app, Params& p, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    app->add_option_function<double>(std::string("--") + n, [&p, n](double v) { p.values[n] = v; },
                                     std::string("model parameter ") + n);
  }
}

Model build_model(const std::string& id, const Params& p) {
  const ModelKind kind = models::parse_model_kind(id);
  Model m{kind, 0.0, 0.0};
  const auto names = m.param_names();
  m.p1 = p.get(std::string(names[0]));
  m.p2 = p.get(std::string(names[1]));
  for (const auto& [name, value] : p.values) {
    if (name != names[0] && name != names[1]) {
      throw ParameterError("--" + name + " does not apply to model " + id);
    }
  }
  m.validate();
  return m;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw ParameterError("not an integer list: '" + s + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParameterError("empty integer list");
  return out;
}

void emit(const std::string& content, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << content;
    return;
  }
  try {
    io::atomic_write(output, content);
  } catch (const std::exception& e) {
    throw ParameterError(e.what());
  }
}

std::string shared_header(const std::vector<std::string>& args) {
  std::string s = " dagumcm";
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "-o" || a == "--output") {
      ++i;
      continue;
    }
    if (a.rfind("--output=", 0) == 0) continue;
    s += " " + a;
  }
  return s;
}

// Command state, filled by CLI11 callbacks.
struct Options {
  std::string output;
  std::string model;
  Params params;
  std::optional<double> x;
  std::string grid;
  std::string kernel;
  std::string route = "primary";
  std::string family;
  bool no_scan = false;
  bool with_c_bounds = false;
  double alpha_tol = 1e-3;
  std::string format = "csv";
  std::string dims = "1,2,3,5";
  int n = 200;
  int sets = 20;
  std::uint64_t seed = 0;
  double side = 10.0;
  std::string convention = "squared_distance";
  int d_max = 10;
  int trials = 100;
  double spacing = 1.0;
  double tol = 1e-6;
};

int cmd_eval(const Options& o, std::ostream& out) {
  const Model m = build_model(o.model, o.params);
  std::vector<double> xs;
  if (o.x && !o.grid.empty()) throw ParameterError("give either --x or --grid");
  if (o.x) {
    xs.push_back(*o.x);
  } else if (!o.grid.empty()) {
    xs = parse_grid(o.grid);
  } else {
    throw ParameterError("one of --x or --grid is required");
  }
  CsvTable csv;
  csv.header = {"x", "value"};
  for (double x : xs) csv.add_row({format_double(x), format_double(models::evaluate(m, x))});
  emit(io::to_csv(csv), o.output, out);
  return kSuccess;
}

int cmd_kernel(const Options& o, std::ostream& out) {
  std::vector<double> ts;
  if (o.x && !o.grid.empty()) throw ParameterError("give either --t or --grid");
  if (o.x) {
    ts.push_back(*o.x);
  } else if (!o.grid.empty()) {
    ts = parse_grid(o.grid);
  } else {
    throw ParameterError("one of --t or --grid is required");
  }
  kernels::Route route;
  if (o.route == "primary") {
    route = kernels::Route::quadrature_primary;
  } else if (o.route == "alternate") {
    route = kernels::Route::quadrature_alternate;
  } else {
    throw ParameterError("--route must be primary or alternate");
  }
  auto param = [&](const char* name) { return o.params.get(name); };

  CsvTable csv;
  csv.header = {"t", "value", "err_estimate", "route"};
  for (double t : ts) {
    kernels::KernelValue k;
    if (o.kernel == "kappa") {
      k = {kernels::kappa(param("alpha"), t), 0.0, kernels::Route::closed_form};
    } else if (o.kernel == "rho") {
      k = {kernels::rho_kernel(param("beta"), t), 0.0, kernels::Route::closed_form};
    } else if (o.kernel == "tau") {
      k = kernels::tau_kernel(param("beta"), t, route);
    } else if (o.kernel == "phi") {
      k = kernels::phi(param("beta"), t, route);
    } else if (o.kernel == "psi") {
      k = kernels::psi(param("beta"), t);
    } else if (o.kernel == "eta") {
      k = route == kernels::Route::quadrature_primary ? kernels::eta_convolution(param("alpha"), param("beta"), t)
                                                      : kernels::eta(param("alpha"), param("beta"), t);
    } else {
      throw ParameterError("unknown kernel '" + o.kernel + "'");
    }
    csv.add_row({format_double(t), format_double(k.value), format_double(k.err_estimate), kernels::to_string(k.route)});
  }
  emit(io::to_csv(csv), o.output, out);
  return kSuccess;
}

int cmd_classify(const Options& o, std::ostream& out) {
  auto param = [&](const char* name) { return o.params.get(name); };
  classify::Verdict v;
  const bool scan = !o.no_scan;
  if (o.family == "dagum") {
    v = classify::classify_dagum(param("beta"), param("gamma"), scan);
  } else if (o.family == "aux-cm") {
    v = classify::classify_aux_cm(param("alpha"), param("beta"), scan);
  } else if (o.family == "aux-lcm") {
    v = classify::classify_aux_lcm(param("alpha"), param("beta"));
  } else if (o.family == "g") {
    v = classify::classify_g(param("alpha"), param("lambda"), scan);
  } else {
    throw ParameterError("family must be one of dagum, aux-cm, aux-lcm, g");
  }
  emit(io::verdict_to_json(v), o.output, out);
  return kSuccess;
}

int cmd_table(const Options& o, std::ostream& out) {
  const std::vector<double> grid = parse_grid(o.grid.empty() ? "1:2:101" : o.grid);
  for (double b : grid) {
    if (!(b >= 1.0 && b <= 2.0)) throw ParameterError("table grid must lie in [1, 2]");
  }
  classify::TableOptions opts;
  opts.with_c_bounds = o.with_c_bounds;
  opts.alpha_tol = o.alpha_tol;
  const classify::ThresholdTable t = classify::build_threshold_table(grid, opts);
  if (o.format == "json") {
    emit(io::table_to_json(t), o.output, out);
  } else if (o.format == "csv") {
    emit(io::to_csv(io::threshold_table_csv(t)), o.output, out);
  } else {
    throw ParameterError("--format must be csv or json");
  }
  return kSuccess;
}

int cmd_figure1(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const std::vector<double> grid = parse_grid(o.grid.empty() ? "1:2:101" : o.grid);
  if (grid.size() < 11) throw ParameterError("figure1 needs at least 11 grid points");
  for (double b : grid) {
    if (!(b >= 1.0 && b <= 2.0)) throw ParameterError("figure1 grid must lie in [1, 2]");
  }
  CsvTable csv;
  csv.header = {"beta", "psi_max", "one_plus_inv_beta", "l_beta"};
  csv.add_comment(shared_header(args));
  try {
    for (double b : grid) {
      const double p = classify::psi_max(b);
      const double l = b == 1.0 ? 0.0 : b == 2.0 ? 2.0 : b * (p - 1.0);
      csv.add_row({format_double(b), format_double(p), format_double(1.0 + 1.0 / b), format_double(l)});
    }
    csv.add_comment(" beta_star=" + format_double(classify::beta_star(o.tol)));
  } catch (const std::exception& e) {
    csv.add_comment(" INCOMPLETE: " + std::string(e.what()));
    emit(io::to_csv(csv), o.output, out);
    throw PartialOutput(e.what());
  }
  emit(io::to_csv(csv), o.output, out);
  return kSuccess;
}

int cmd_psd(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const Model m = build_model(o.model, o.params);
  const fields::Convention c = fields::parse_convention(o.convention);
  const std::vector<int> dims = parse_int_list(o.dims);
  if (o.n < 1 || o.sets < 1) throw ParameterError("--n and --sets must be >= 1");
  std::vector<fields::PsdReport> reports;
  int indefinite = 0;
  for (int d : dims) {
    if (d < 1) throw ParameterError("dimensions must be >= 1");
    for (int s = 0; s < o.sets; ++s) {
      const std::uint64_t stream = (static_cast<std::uint64_t>(d) << 32) | static_cast<std::uint64_t>(s);
      const fields::PointSet ps = fields::random_point_set(d, o.n, o.side, o.seed, stream);
      reports.push_back(fields::psd_check(m, ps, c));
      if (reports.back().verdict == fields::PsdVerdict::indefinite) ++indefinite;
    }
  }
  CsvTable csv = io::psd_reports_csv(reports);
  csv.comments.insert(csv.comments.begin(), {0, shared_header(args)});
  csv.add_comment(" indefinite=" + std::to_string(indefinite) + " of " + std::to_string(reports.size()));
  emit(io::to_csv(csv), o.output, out);
  return kSuccess;
}

int cmd_search(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const Model m = build_model(o.model, o.params);
  const fields::Convention c = fields::parse_convention(o.convention);
  const auto hit = fields::nonpsd_search(m, o.d_max, o.n, o.trials, o.seed, c);
  std::vector<fields::PsdReport> reports;
  if (hit) reports.push_back(hit->report);
  CsvTable csv = io::psd_reports_csv(reports);
  csv.comments.insert(csv.comments.begin(), {0, shared_header(args)});
  if (hit) {
    csv.add_comment(" witness found at trial " + std::to_string(hit->trial));
  } else {
    csv.add_comment(" no indefinite configuration within " + std::to_string(o.trials) +
                    " trials; this proves nothing");
  }
  emit(io::to_csv(csv), o.output, out);
  return kSuccess;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Model m = build_model(o.model, o.params);
  const fields::Profile p = fields::simulate_profile(m, o.n, o.spacing, o.seed);
  emit(io::to_csv(io::profile_csv(p)), o.output, out);
  return kSuccess;
}

int cmd_decouple(const Options& o, std::ostream& out) {
  const Model m = build_model(o.family, o.params);
  double expected_local = 0.0;
  double expected_tail = 0.0;
  if (m.kind == ModelKind::dagum5) {
    expected_local = m.p2;
    expected_tail = -m.p1;
  } else if (m.kind == ModelKind::cauchy) {
    expected_local = m.p1;
    expected_tail = -m.p2;
  } else {
    throw ParameterError("--family must be dagum5 or cauchy");
  }
  const fields::ExponentEstimate local = fields::estimate_local_exponent(m);
  const fields::ExponentEstimate tail = fields::estimate_hurst_exponent(m);
  CsvTable csv;
  csv.header = {"quantity", "estimate", "err_estimate", "ls_slope", "expected"};
  csv.add_row({"local_exponent", format_double(local.value), format_double(local.err_estimate),
               format_double(local.ls_slope), format_double(expected_local)});
  csv.add_row({"tail_exponent", format_double(tail.value), format_double(tail.err_estimate),
               format_double(tail.ls_slope), format_double(expected_tail)});
  emit(io::to_csv(csv), o.output, out);
  return kSuccess;
}

int cmd_cbounds(const Options& o, std::ostream& out) {
  const double beta = o.params.get("beta");
  const classify::CBounds cb = classify::c_bounds(beta, o.alpha_tol);
  CsvTable csv;
  csv.header = {"beta", "c_lower", "c_upper", "alpha_tol"};
  csv.add_row({format_double(beta), format_double(cb.lower), format_double(cb.upper), format_double(o.alpha_tol)});
  emit(io::to_csv(csv), o.output, out);
  return kSuccess;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
  if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos) {
    throw ParameterError("grid must have the form start:stop:count, got '" + spec + "'");
  }
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ParameterError("bad number '" + std::string(s) + "' in grid '" + spec + "'");
    }
    return v;
  };
  const std::string_view view(spec);
  const double start = number(view.substr(0, first));
  const double stop = number(view.substr(first + 1, second - first - 1));
  const std::string_view count_text = view.substr(second + 1);
  int count = 0;
  const auto res = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (res.ec != std::errc() || res.ptr != count_text.data() + count_text.size() || count < 1) {
    throw ParameterError("grid count must be a positive integer in '" + spec + "'");
  }
  if (count > 1 && !(start < stop)) throw ParameterError("grid needs start < stop in '" + spec + "'");
  return numerics::linspace(start, stop, count);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complete monotonicity toolkit for the Dagum family and its auxiliary functions", "dagumcm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");
  Options o;

  auto with_output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "Write to this file atomically"); };
  auto with_model = [&](CLI::App* sub) {
    sub->add_option("model", o.model, "dagum, dagum5, cauchy, aux or g")->required();
    add_param_options(sub, o.params, {"beta", "gamma", "epsilon", "theta", "eta", "alpha", "lambda"});
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a catalog model");
  with_model(eval);
  eval->add_option("--x", o.x, "Single argument");
  eval->add_option("--grid", o.grid, "Grid start:stop:count");
  with_output(eval);

  CLI::App* kernel = app.add_subcommand("kernel", "Evaluate kappa, rho, tau, phi, psi or eta");
  kernel->add_option("name", o.kernel, "kappa, rho, tau, phi, psi or eta")->required();
  add_param_options(kernel, o.params, {"alpha", "beta"});
  kernel->add_option("--t", o.x, "Single argument");
  kernel->add_option("--grid", o.grid, "Grid start:stop:count");
  kernel->add_option("--route", o.route, "primary or alternate");
  with_output(kernel);

  CLI::App* cls = app.add_subcommand("classify", "Classify a parameter pair");
  cls->add_option("family", o.family, "dagum, aux-cm, aux-lcm or g")->required();
  add_param_options(cls, o.params, {"alpha", "beta", "gamma", "lambda"});
  cls->add_flag("--no-scan", o.no_scan, "Theorem-backed verdicts only");
  with_output(cls);

  CLI::App* table = app.add_subcommand("table", "Threshold table of psi_max, l and optionally c bounds");
  table->add_option("--grid", o.grid, "Beta grid start:stop:count (default 1:2:101)");
  table->add_flag("--c-bounds", o.with_c_bounds, "Also bracket c(beta)");
  table->add_option("--alpha-tol", o.alpha_tol, "Bisection tolerance of the c bounds");
  table->add_option("--format", o.format, "csv or json");
  with_output(table);

  CLI::App* fig = app.add_subcommand("figure1", "Data of max psi, 1 + 1/beta and l against beta");
  fig->add_option("--grid", o.grid, "Beta grid start:stop:count (default 1:2:101)");
  fig->add_option("--tol", o.tol, "Bisection tolerance of beta_star");
  with_output(fig);

  CLI::App* psd = app.add_subcommand("psd", "Gram-matrix eigenvalue checks on random point sets");
  with_model(psd);
  psd->add_option("--dims", o.dims, "Comma-separated dimensions");
  psd->add_option("--n", o.n, "Points per set");
  psd->add_option("--sets", o.sets, "Point sets per dimension");
  psd->add_option("--seed", o.seed, "Seed");
  psd->add_option("--side", o.side, "Points are uniform in [0, side]^d");
  psd->add_option("--convention", o.convention, "squared_distance or plain_distance");
  with_output(psd);

  CLI::App* search = app.add_subcommand("search", "Random search for an indefinite Gram matrix");
  with_model(search);
  search->add_option("--d-max", o.d_max, "Largest dimension");
  search->add_option("--n", o.n, "Points per configuration");
  search->add_option("--trials", o.trials, "Configurations to try");
  search->add_option("--seed", o.seed, "Seed");
  search->add_option("--convention", o.convention, "squared_distance or plain_distance");
  with_output(search);

  CLI::App* sim = app.add_subcommand("simulate", "Simulate a 1-D Gaussian profile");
  with_model(sim);
  sim->add_option("--n", o.n, "Profile length");
  sim->add_option("--spacing", o.spacing, "Grid spacing");
  sim->add_option("--seed", o.seed, "Seed");
  with_output(sim);

  CLI::App* dec = app.add_subcommand("decouple", "Local and tail exponents of the variogram");
  dec->add_option("--family", o.family, "dagum5 or cauchy")->required();
  add_param_options(dec, o.params, {"gamma", "epsilon", "theta", "eta"});
  with_output(dec);

  CLI::App* cb = app.add_subcommand("cbounds", "Bracket c(beta)");
  add_param_options(cb, o.params, {"beta"});
  cb->add_option("--alpha-tol", o.alpha_tol, "Bisection tolerance");
  with_output(cb);

  // Defaults that differ between commands.
  sim->preparse_callback([&](std::size_t) { o.n = 512; });
  search->preparse_callback([&](std::size_t) { o.n = 30; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParameterError;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*kernel) return cmd_kernel(o, out);
    if (*cls) return cmd_classify(o, out);
    if (*table) return cmd_table(o, out);
    if (*fig) return cmd_figure1(o, args, out);
    if (*psd) return cmd_psd(o, args, out);
    if (*search) return cmd_search(o, args, out);
    if (*sim) return cmd_simulate(o, out);
    if (*dec) return cmd_decouple(o, out);
    if (*cb) return cmd_cbounds(o, out);
  } catch (const fields::NotPermissible& e) {
    err << "error: " << e.what() << "\n";
    return kNotPermissible;
  } catch (const numerics::QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const numerics::NoSignChange& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const PartialOutput& e) {
    err << "error: " << e.what() << " (partial output retained)\n";
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kParameterError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kParameterError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  }
  err << "error: no command given\n";
  return kParameterError;
}

}  // namespace dagum::cli
