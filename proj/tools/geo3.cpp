// geo3: command-line front end for the submersion verification engine.
//
//   geo3 list
//   geo3 check  --map ID [--m M --l L | --eps E] [--points N] [--seed S]
//   geo3 sweep  [--map ID] --m LIST --l LIST | --eps LIST
//   geo3 tables --space bcv|berger [--m M --l L | --eps E]
//
// Exit codes: 0 all expectations met, 1 an expectation violated, 2 usage error.

#include "geo3/errors.hpp"
#include "geo3/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Options
{
  std::string space;
  std::string map;
  std::string m;
  std::string l;
  std::string eps;
  std::size_t points{200};
  std::optional<std::uint64_t> seed;
  std::string format{"json"};
  std::string out;
  geo3::Tolerances tol;
};

std::uint64_t resolve_seed(const Options & o)
{
  if (o.seed) { return *o.seed; }
  if (const char * env = std::getenv("GEO3_SEED"); env && *env) {
    const std::string s(env);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != s.size() || s.front() == '-') { throw geo3::UsageError("GEO3_SEED is not an unsigned integer: " + s); }
    return v;
  }
  return geo3::kDefaultSeed;
}

geo3::RunConfig make_config(const Options & o)
{
  geo3::RunConfig c;
  c.space = o.space;
  c.map = o.map;
  c.m = geo3::parse_list(o.m);
  c.l = geo3::parse_list(o.l);
  c.eps = geo3::parse_list(o.eps);
  c.points = o.points;
  c.seed = resolve_seed(o);
  c.tol = o.tol;
  if (o.format == "json") {
    c.format = geo3::Format::Json;
  } else if (o.format == "csv") {
    c.format = geo3::Format::Csv;
  } else {
    throw geo3::UsageError("--format must be json or csv");
  }
  return c;
}

std::optional<double> one(const std::vector<double> & v, const char * flag)
{
  if (v.empty()) { return std::nullopt; }
  if (v.size() != 1) { throw geo3::UsageError(std::string(flag) + " takes a single value for check"); }
  return v.front();
}

void emit(const std::string & text, const std::string & path)
{
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) { throw geo3::UsageError("cannot open output file " + path); }
  f << text;
  f.close();
  if (!f) { throw geo3::UsageError("failed writing output file " + path); }
}

void print_failed_rules(const std::string & where, const std::vector<geo3::RuleResult> & rules)
{
  for (const auto & r : rules) {
    if (!r.passed) {
      std::cerr << "FAIL " << where << ": " << r.name << " value=" << r.value << " limit=" << r.limit << "\n";
    }
  }
}

void add_common(CLI::App * cmd, Options & o)
{
  cmd->add_option("--points", o.points, "Number of seeded sample points")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Sampling seed (falls back to GEO3_SEED, then 42)");
  cmd->add_option("--format", o.format, "json or csv");
  cmd->add_option("--out", o.out, "Write the report here instead of stdout");
  cmd->add_option("--tol-harmonic", o.tol.harmonic, "max |kappa| that counts as harmonic");
  cmd->add_option("--tol-obstruction", o.tol.obstruction, "|kappa| that counts as a genuine obstruction");
  cmd->add_option("--tol-identity", o.tol.identity, "Curvature identity and K^N tolerance");
  cmd->add_option("--tol-closed-form", o.tol.closed_form, "Closed-form table and data tolerance");
  cmd->add_option("--tol-system", o.tol.system, "Harmonic curvature system tolerance");
  cmd->add_option("--tol-validation", o.tol.validation, "Submersion property tolerance");
  cmd->add_option("--tol-kn-spread", o.tol.kn_spread, "Allowed spread of a constant K^N");
}

void add_params(CLI::App * cmd, Options & o)
{
  cmd->add_option("--m", o.m, "BCV parameter m (comma list for sweep)");
  cmd->add_option("--l", o.l, "BCV parameter l (comma list for sweep)");
  cmd->add_option("--eps", o.eps, "Berger parameter eps (comma list for sweep)");
}

int run_list()
{
  for (const auto & id : geo3::catalog_ids()) {
    const auto spec = geo3::lookup(id);
    std::cout << id << "\t" << (spec.expected.harmonic ? "harmonic" : "non-harmonic") << "\t" << spec.description << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Verification engine for harmonic Riemannian submersions of 3-dimensional model geometries"};
  app.require_subcommand(1);
  Options o;

  auto * list = app.add_subcommand("list", "List catalog entries");
  auto * check = app.add_subcommand("check", "Check one catalog entry");
  check->add_option("--map", o.map, "Catalog id")->required();
  add_params(check, o);
  add_common(check, o);
  auto * sweep = app.add_subcommand("sweep", "Check bcv.projection over an (m, l) grid or berger.hopf over eps");
  sweep->add_option("--map", o.map, "bcv.projection or berger.hopf");
  add_params(sweep, o);
  add_common(sweep, o);
  auto * tables = app.add_subcommand("tables", "Verify connection and curvature tables of a model space");
  tables->add_option("--space", o.space, "bcv or berger")->required();
  add_params(tables, o);
  add_common(tables, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int rc = kOk;
  try {
    if (list->parsed()) { return run_list(); }
    const geo3::RunConfig config = make_config(o);
    const bool json = config.format == geo3::Format::Json;
    if (check->parsed()) {
      const geo3::CatalogParams params{one(config.m, "--m"), one(config.l, "--l"), one(config.eps, "--eps")};
      const auto r = geo3::run_check(config.map, params, config);
      emit(json ? geo3::dump_json(geo3::to_json(r)) : geo3::to_csv(r), o.out);
      if (!r.failure.empty()) { std::cerr << "FAIL " << r.map << ": " << r.failure << "\n"; }
      print_failed_rules(r.map, r.rules);
      rc = r.passed() ? kOk : kViolation;
    } else if (sweep->parsed()) {
      const auto s = geo3::run_sweep(config);
      emit(json ? geo3::dump_json(geo3::to_json(s)) : geo3::to_csv(s), o.out);
      for (const auto & c : s.cells) {
        std::ostringstream where;
        where << c.map << " m=" << c.params.m.value_or(0.0) << " l=" << c.params.l.value_or(0.0);
        if (c.params.eps) { where.str(c.map + " eps=" + std::to_string(*c.params.eps)); }
        if (!c.failure.empty()) { std::cerr << "FAIL " << where.str() << ": " << c.failure << "\n"; }
        print_failed_rules(where.str(), c.rules);
      }
      rc = s.passed() ? kOk : kViolation;
    } else if (tables->parsed()) {
      const auto t = geo3::run_tables(config);
      emit(json ? geo3::dump_json(geo3::to_json(t)) : geo3::to_csv(t), o.out);
      print_failed_rules(t.space, t.rules);
      rc = t.passed() ? kOk : kViolation;
    }
  } catch (const geo3::UsageError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "elapsed " << secs << " s\n";
  return rc;
}
