// coefbound: bound tables, verification suites and series expansion.
//
// Exit status: 0 when every assertion passes, 1 on a violation, 2 on a usage
// or configuration error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "coefbound/harness.hpp"
#include "coefbound/pspec.hpp"
#include "coefbound/reports.hpp"

namespace cb = coefbound;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

struct Options {
  std::vector<int> n;
  std::vector<std::string> alpha;
  std::vector<std::string> beta;
  std::optional<int> kmax;
  std::optional<int> order;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_atoms;
  std::optional<double> slack;
  std::optional<double> rel_tol;
  std::string backend = "float";
  std::string format = "csv";
  double radius = 0.99;
  int samples = 720;
  std::string out;
  std::string suite;
  std::string p_spec;
};

template <cb::Scalar S>
cb::GridSpec<S> make_grid(const Options& o) {
  cb::GridSpec<S> grid = cb::default_grid<S>();
  if (!o.n.empty()) grid.n_values = o.n;
  if (!o.alpha.empty()) {
    grid.alpha_values.clear();
    for (const auto& a : o.alpha) grid.alpha_values.push_back(cb::parse_scalar<S>(a));
  }
  if (!o.beta.empty()) {
    grid.beta_values.clear();
    for (const auto& b : o.beta) grid.beta_values.push_back(cb::parse_scalar<S>(b));
  }
  if (o.kmax) grid.k_max = *o.kmax;
  if (o.order) grid.order = *o.order;
  if (o.trials) grid.trials = *o.trials;
  if (o.seed) grid.seed = *o.seed;
  if (o.max_atoms) grid.max_atoms = *o.max_atoms;
  if (o.slack) grid.slack = *o.slack;
  if (o.rel_tol) grid.rel_tol = *o.rel_tol;
  grid.validate();
  return grid;
}

cb::Format format_of(const Options& o) { return o.format == "json" ? cb::Format::Json : cb::Format::Csv; }

template <class Write>
void emit(const Options& o, Write&& write) {
  if (o.out.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw cb::usage_error("cannot open --out path '" + o.out + "'");
  write(file);
  if (!file) throw cb::usage_error("failed writing '" + o.out + "'");
}

std::string read_p_spec(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw cb::usage_error("cannot read p_spec file '" + arg + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

void summarize(const std::string& name, const std::vector<cb::SuiteReport>& rows, double seconds) {
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const cb::SuiteReport& r) { return !r.pass; });
  std::cerr << name << ": " << rows.size() << " rows, " << failed << " failed, " << seconds << " s\n";
}

template <cb::Scalar S>
int run_verify(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<cb::SuiteReport> rows;
  if (o.suite == "hk") {
    const auto grid = make_grid<S>(o);
    rows = cb::run_hk_audit<S>(grid.k_max, grid.alpha_values, grid.order, o.radius, o.samples);
  } else {
    const auto grid = make_grid<S>(o);
    if (o.suite == "extremal")
      rows = cb::run_extremal_suite(grid);
    else if (o.suite == "random")
      rows = cb::run_random_suite(grid);
    else if (o.suite == "nehari")
      rows = cb::run_nehari_suite(grid);
    else if (o.suite == "theorem2")
      rows = cb::run_theorem2_suite(grid);
    else if (o.suite == "alpha-one")
      rows = cb::run_alpha_one_audit(grid);
    else
      throw cb::usage_error("unknown suite '" + o.suite + "'");
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(o, [&](std::ostream& out) { cb::write_suite(out, rows, format_of(o)); });
  summarize(o.suite, rows, seconds);
  return cb::all_pass(rows) ? exit_ok : exit_violation;
}

template <cb::Scalar S>
int run_bounds(const Options& o) {
  const auto rows = cb::run_bounds_table(make_grid<S>(o));
  emit(o, [&](std::ostream& out) { cb::write_bounds(out, rows, format_of(o)); });
  return exit_ok;
}

template <cb::Scalar S>
int run_expand(const Options& o) {
  if (o.n.size() > 1 || o.alpha.size() > 1 || o.beta.size() > 1)
    throw cb::usage_error("expand takes a single --n, --alpha and --beta");
  const cb::ClassParams<S> params{o.n.empty() ? 0 : o.n.front(),
                                  cb::parse_scalar<S>(o.alpha.empty() ? "2" : o.alpha.front()),
                                  cb::parse_scalar<S>(o.beta.empty() ? "0" : o.beta.front())};
  params.validate();
  const int order = o.order.value_or(16);
  const int kmax = o.kmax.value_or(std::min(order, 12));
  const auto p = cb::parse_p_spec<S>(read_p_spec(o.p_spec));
  const auto result = cb::expand(p, params, order, kmax, o.radius, o.samples);
  emit(o, [&](std::ostream& out) { cb::write_expand(out, result, format_of(o)); });
  // a generator outside the class, or a coefficient above its bound, is a violation
  const bool bounds_ok = std::all_of(result.reports.begin(), result.reports.end(), [](const auto& r) {
    return !(r.margin < S(-1e-9));
  });
  return bounds_ok && result.membership >= -cb::truncation_tail_bound(o.radius, order) ? exit_ok : exit_violation;
}

template <cb::Scalar S>
int dispatch(const std::string& command, const Options& o) {
  if (command == "bounds") return run_bounds<S>(o);
  if (command == "verify") return run_verify<S>(o);
  return run_expand<S>(o);
}

void add_grid_flags(CLI::App* app, Options& o) {
  app->add_option("--n", o.n, "integral iteration count (repeatable)");
  app->add_option("--alpha", o.alpha, "alpha, decimal or p/q (repeatable)");
  app->add_option("--beta", o.beta, "beta in [0, 1), decimal or p/q (repeatable)");
  app->add_option("--kmax", o.kmax, "largest coefficient index checked");
  app->add_option("--order", o.order, "series truncation order");
  app->add_option("--backend", o.backend, "arithmetic backend")->check(CLI::IsMember({"float", "rational"}));
  app->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--radius", o.radius, "circle radius for positivity checks");
  app->add_option("--samples", o.samples, "points on the circle");
  app->add_option("--out", o.out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coefficient bounds for the class T_n^alpha(beta)"};
  app.require_subcommand(1);
  Options o;

  auto* bounds = app.add_subcommand("bounds", "tabulate sharp_bound, theorem1_bound and theorem2_estimate over a grid");
  add_grid_flags(bounds, o);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.suite, "extremal | random | hk | nehari | theorem2 | alpha-one")
      ->required()
      ->check(CLI::IsMember({"extremal", "random", "hk", "nehari", "theorem2", "alpha-one"}));
  add_grid_flags(verify, o);
  verify->add_option("--trials", o.trials, "random generators per grid point");
  verify->add_option("--seed", o.seed, "base seed");
  verify->add_option("--max-atoms", o.max_atoms, "largest atom count of a random generator");
  verify->add_option("--slack", o.slack, "absolute slack on inequalities");
  verify->add_option("--rel-tol", o.rel_tol, "relative tolerance on identities (float)");

  auto* expand = app.add_subcommand("expand", "expand f from a Herglotz generator and report its bounds");
  expand->add_option("p_spec", o.p_spec, "p_spec file, '-' for stdin, or an inline JSON document")->required();
  add_grid_flags(expand, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return o.backend == "rational" ? dispatch<cb::Rational>(command, o) : dispatch<double>(command, o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
}
