#include "geo3/report.hpp"

#include "geo3/errors.hpp"

#include <Eigen/QR>

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

namespace geo3 {

using nlohmann::ordered_json;

namespace {

std::string fmt17(double v)
{
  if (!std::isfinite(v)) { return v != v ? "nan" : (v > 0 ? "inf" : "-inf"); }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RuleResult rule(std::string name, bool passed, double value, double limit)
{
  return {std::move(name), passed, value, limit};
}

bool all_passed(const std::vector<RuleResult> & rules)
{
  for (const auto & r : rules) {
    if (!r.passed) { return false; }
  }
  return !rules.empty();
}

ordered_json rules_json(const std::vector<RuleResult> & rules)
{
  ordered_json a = ordered_json::array();
  for (const auto & r : rules) {
    a.push_back({{"name", r.name}, {"passed", r.passed}, {"value", r.value}, {"limit", r.limit}});
  }
  return a;
}

ordered_json tolerances_json(const Tolerances & t)
{
  return {{"harmonic", t.harmonic},       {"obstruction", t.obstruction}, {"identity", t.identity},
          {"closed_form", t.closed_form}, {"system", t.system},           {"validation", t.validation},
          {"kn_spread", t.kn_spread}};
}

ordered_json params_json(const CatalogParams & p)
{
  ordered_json j = ordered_json::object();
  if (p.m) { j["m"] = *p.m; }
  if (p.l) { j["l"] = *p.l; }
  if (p.eps) { j["eps"] = *p.eps; }
  return j;
}

template <std::size_t N>
ordered_json array_json(const std::array<double, N> & a)
{
  ordered_json j = ordered_json::array();
  for (double v : a) { j.push_back(v); }
  return j;
}

void dump_value(const ordered_json & j, std::string & out, int indent)
{
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) { out += ",\n"; }
        first = false;
        out += pad + ordered_json(it.key()).dump() + ": ";
        dump_value(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) { out += ",\n"; }
        out += pad;
        dump_value(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      std::string s = fmt17(v);
      if (s.find_first_of(".e") == std::string::npos) { s += ".0"; }
      out += s;
      return;
    }
    default: out += j.dump(); return;
  }
}

Eigen::Matrix3d seeded_rotation(std::mt19937_64 & rng)
{
  std::normal_distribution<double> normal;
  Eigen::Matrix3d m;
  for (int i = 0; i < 9; ++i) { m(i / 3, i % 3) = normal(rng); }
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) { q.col(0) *= -1.0; }
  return q;
}

CatalogParams used_params(const SubmersionSpec & spec)
{
  CatalogParams p;
  if (const auto * b = std::get_if<BCVParams>(&spec.total.params)) {
    p.m = b->m;
    p.l = b->l;
  } else if (const auto * e = std::get_if<BergerParams>(&spec.total.params)) {
    p.eps = e->epsilon;
  }
  return p;
}

std::optional<double> sigma_squared_target(const SubmersionSpec & spec)
{
  if (const auto * b = std::get_if<BCVParams>(&spec.total.params)) { return 0.25 * b->l * b->l; }
  if (const auto * e = std::get_if<BergerParams>(&spec.total.params)) { return e->epsilon * e->epsilon; }
  return std::nullopt;
}

std::optional<double> single(const std::vector<double> & v, const char * flag)
{
  if (v.empty()) { return std::nullopt; }
  if (v.size() != 1) { throw UsageError(std::string(flag) + " takes a single value here"); }
  return v.front();
}

void csv_header(std::ostringstream & os, const CheckResult & r)
{
  os << "point";
  for (const auto & c : r.coordinates) { os << "," << c; }
  os << ",kappa1,kappa2,sigma,f1,f2,f3,kn,tension,frame_residual,data_agreement";
  for (int i = 1; i <= 7; ++i) { os << ",rc" << i; }
  for (int i = 1; i <= 8; ++i) { os << ",rc0_" << i; }
  os << "\n";
}

void csv_rows(std::ostringstream & os, const CheckResult & r, const std::string & prefix)
{
  std::size_t i = 0;
  for (const auto & rec : r.identities.records) {
    os << prefix << i++;
    for (int k = 0; k < rec.coords.size(); ++k) { os << "," << fmt17(rec.coords(k)); }
    const auto & d = rec.data;
    for (double v : {d.kappa1, d.kappa2, d.sigma, d.f1, d.f2, d.f3, rec.gauss_curvature, rec.tension,
                     rec.frame_residual, rec.data_agreement}) {
      os << "," << fmt17(v);
    }
    for (double v : rec.rc) { os << "," << fmt17(v); }
    for (double v : rec.rc0) { os << "," << fmt17(v); }
    os << "\n";
  }
}

std::string opt17(const std::optional<double> & v) { return v ? fmt17(*v) : ""; }

}  // namespace

void validate_config(const RunConfig & c)
{
  if (c.points < 1) { throw UsageError("--points must be at least 1"); }
  const Tolerances & t = c.tol;
  for (double v : {t.harmonic, t.obstruction, t.identity, t.closed_form, t.system, t.validation, t.kn_spread, t.fd}) {
    if (!(v > 0.0) || !std::isfinite(v)) { throw UsageError("tolerances must be positive and finite"); }
  }
}

std::vector<double> parse_list(const std::string & text)
{
  std::vector<double> out;
  if (text.find_first_not_of(" \t") == std::string::npos) { return out; }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) { throw UsageError("empty entry in list '" + text + "'"); }
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) { throw UsageError("not a number: '" + tok + "'"); }
    out.push_back(v);
  }
  if (!text.empty() && text.back() == ',') { throw UsageError("empty entry in list '" + text + "'"); }
  return out;
}

// --- check --------------------------------------------------------------------------

bool CheckResult::passed() const { return failure.empty() && all_passed(rules); }

CheckResult run_check(const std::string & map, const CatalogParams & params, const RunConfig & config)
{
  validate_config(config);
  const SubmersionSpec spec = lookup(map, params);
  const Tolerances & tol = config.tol;

  CheckResult r;
  r.map = map;
  r.description = spec.description;
  r.params = used_params(spec);
  r.points = config.points;
  r.seed = config.seed;
  r.tolerances = tol;
  r.chart = spec.total.chart->id();
  r.coordinates = spec.total.chart->coordinate_names();
  r.expected = spec.expected;
  if (const auto * b = std::get_if<BCVParams>(&spec.total.params)) { r.case_label = case_label(classify_bcv(*b)); }

  const auto points = sample_points(spec.total.chart, config.points, config.seed);
  try {
    r.validation = validate_submersion(spec, points);
    IdentityOptions opt;
    opt.tolerances = {tol.harmonic, tol.obstruction};
    r.identities = identity_report(spec, points, opt);
  } catch (const std::runtime_error & e) {
    if (dynamic_cast<const UsageError *>(&e)) { throw; }
    r.failure = e.what();
    r.rules.push_back(rule("completed", false, 0.0, 0.0));
    return r;
  }

  const auto & id = r.identities;
  const auto & v = id.verdict;
  r.rules.push_back(rule("submersion", r.validation.max() <= tol.validation, r.validation.max(), tol.validation));
  r.rules.push_back(rule("natural_frame", id.frame_residual <= kNaturalFrameTolerance, id.frame_residual, kNaturalFrameTolerance));
  const Verdict want = spec.expected.harmonic ? Verdict::Harmonic : Verdict::NonHarmonic;
  r.rules.push_back(rule("verdict", v.verdict == want, v.max_kappa, spec.expected.harmonic ? tol.harmonic : tol.obstruction));
  r.rules.push_back(rule("tension_agrees",
                         (v.max_kappa <= tol.harmonic) == (v.max_tension <= tol.harmonic) &&
                           (v.max_kappa >= tol.obstruction) == (v.max_tension >= tol.obstruction),
                         v.max_tension, tol.harmonic));
  r.rules.push_back(rule("rc_identities", id.rc_overall() <= tol.identity, id.rc_overall(), tol.identity));
  if (spec.closed_form_data) {
    r.rules.push_back(rule("closed_form_data", id.data_agreement <= tol.closed_form, id.data_agreement, tol.closed_form));
  }
  if (spec.expected.gauss_curvature) {
    const double k = *spec.expected.gauss_curvature;
    const double dev = std::max(std::abs(id.kn_min - k), std::abs(id.kn_max - k));
    r.rules.push_back(rule("kn_value", dev <= tol.identity, dev, tol.identity));
    r.rules.push_back(rule("kn_spread", id.kn_spread() <= tol.kn_spread, id.kn_spread(), tol.kn_spread));
  }
  if (spec.expected.rc0_holds) {
    const bool holds = id.rc0_overall() <= tol.system;
    r.rules.push_back(rule(*spec.expected.rc0_holds ? "rc0_holds" : "rc0_fails", holds == *spec.expected.rc0_holds,
                           id.rc0_overall(), tol.system));
  }
  if (const auto s2 = sigma_squared_target(spec)) {
    const double dev = std::max(std::abs(id.sigma_sq_min - *s2), std::abs(id.sigma_sq_max - *s2));
    r.rules.push_back(rule("sigma_squared", dev <= tol.closed_form, dev, tol.closed_form));
  }
  return r;
}

// --- sweep -----------------------------------------------------------------------------

bool SweepResult::passed() const
{
  if (cells.empty()) { return false; }
  for (const auto & c : cells) {
    if (!c.passed()) { return false; }
  }
  return true;
}

SweepResult run_sweep(const RunConfig & config)
{
  validate_config(config);
  SweepResult s;
  s.map = config.map.empty() ? (config.eps.empty() ? "bcv.projection" : "berger.hopf") : config.map;
  if (s.map == "bcv.projection") {
    if (config.m.empty() || config.l.empty()) { throw UsageError("sweep over bcv.projection needs non-empty --m and --l"); }
    if (!config.eps.empty()) { throw UsageError("bcv.projection takes no --eps"); }
    for (double m : config.m) {
      for (double l : config.l) { s.cells.push_back(run_check(s.map, {m, l, std::nullopt}, config)); }
    }
  } else if (s.map == "berger.hopf") {
    if (config.eps.empty()) { throw UsageError("sweep over berger.hopf needs a non-empty --eps"); }
    if (!config.m.empty() || !config.l.empty()) { throw UsageError("berger.hopf takes no --m/--l"); }
    for (double e : config.eps) { s.cells.push_back(run_check(s.map, {std::nullopt, std::nullopt, e}, config)); }
  } else {
    throw UsageError("sweep supports bcv.projection and berger.hopf, not " + s.map);
  }
  return s;
}

// --- tables ---------------------------------------------------------------------------

bool TablesResult::passed() const { return all_passed(rules); }

TablesResult run_tables(const RunConfig & config)
{
  validate_config(config);
  TablesResult r;
  r.space = config.space;
  r.points = config.points;
  r.seed = config.seed;
  SpaceDescriptor space;
  if (config.space == "bcv") {
    if (!config.eps.empty()) { throw UsageError("--space bcv takes no --eps"); }
    r.m = single(config.m, "--m").value_or(0.0);
    r.l = single(config.l, "--l").value_or(0.0);
    space = bcv_space({r.m, r.l});
  } else if (config.space == "berger") {
    if (!config.m.empty() || !config.l.empty()) { throw UsageError("--space berger takes no --m/--l"); }
    r.eps = single(config.eps, "--eps").value_or(1.0);
    space = berger_space({r.eps});
  } else {
    throw UsageError("--space must be bcv or berger, got '" + config.space + "'");
  }

  const auto points = sample_points(space.chart, config.points, config.seed);
  r.tables = verify_connection_tables(space, points);
  std::mt19937_64 rng(config.seed);
  for (int i = 0; i < 3; ++i) {
    const FrameRotation a(seeded_rotation(rng));
    r.rotated_max = std::max(r.rotated_max, rotated_frame_check(space, a, points).max);
  }
  const Tolerances & t = config.tol;
  const auto & tb = r.tables;
  r.rules.push_back(rule("brackets", tb.bracket_deviation <= t.closed_form, tb.bracket_deviation, t.closed_form));
  r.rules.push_back(rule("connection", tb.connection_deviation <= t.closed_form, tb.connection_deviation, t.closed_form));
  r.rules.push_back(rule("curvature", tb.curvature_deviation <= t.closed_form, tb.curvature_deviation, t.closed_form));
  r.rules.push_back(rule("ricci", tb.ricci_deviation <= t.closed_form, tb.ricci_deviation, t.closed_form));
  r.rules.push_back(rule("levi_civita", tb.connection_defect <= t.closed_form, tb.connection_defect, t.closed_form));
  r.rules.push_back(rule("symmetries", tb.symmetry_defect <= t.system, tb.symmetry_defect, t.system));
  r.rules.push_back(rule("rotated_frames", r.rotated_max <= t.system, r.rotated_max, t.system));
  return r;
}

// --- serialization ------------------------------------------------------------------------

ordered_json to_json(const CheckResult & r)
{
  ordered_json j;
  j["schema"] = 1;
  j["command"] = "check";
  j["config"] = {{"map", r.map}, {"params", params_json(r.params)}, {"points", r.points}, {"seed", r.seed},
                 {"tolerances", tolerances_json(r.tolerances)}};
  ordered_json expected = {{"harmonic", r.expected.harmonic}, {"kn", nullptr}, {"rc0", nullptr}};
  if (r.expected.gauss_curvature) { expected["kn"] = *r.expected.gauss_curvature; }
  if (r.expected.rc0_holds) { expected["rc0"] = *r.expected.rc0_holds; }
  j["entry"] = {{"description", r.description},
                {"chart", r.chart},
                {"coordinates", r.coordinates},
                {"case", r.case_label.empty() ? ordered_json(nullptr) : ordered_json(r.case_label)},
                {"expected", expected}};
  if (r.failure.empty()) {
    const auto & id = r.identities;
    j["verdict"] = {{"harmonic", id.verdict.harmonic()},
                    {"observed", to_string(id.verdict.verdict)},
                    {"max_kappa", id.verdict.max_kappa},
                    {"max_tension", id.verdict.max_tension}};
    j["kn"] = {{"mean", id.kn_mean}, {"min", id.kn_min}, {"max", id.kn_max}, {"spread", id.kn_spread()}};
    j["sigma"] = {{"min_abs", id.sigma_min_abs}, {"sq_min", id.sigma_sq_min}, {"sq_max", id.sigma_sq_max}};
    j["residuals"] = {
      {"submersion",
       {{"max", r.validation.max()},
        {"vertical", r.validation.vertical},
        {"unit_norm", r.validation.unit_norm},
        {"orthogonality", r.validation.orthogonality},
        {"frame", r.validation.frame}}},
      {"rc", {{"max", id.rc_overall()}, {"per_equation", array_json(id.rc_max)}}},
      {"rc0", {{"max", id.rc0_overall()}, {"per_equation", array_json(id.rc0_max)}}},
      {"data_agreement", id.data_agreement},
      {"frame", id.frame_residual}};
  }
  j["rules"] = rules_json(r.rules);
  j["failure"] = r.failure.empty() ? ordered_json(nullptr) : ordered_json(r.failure);
  j["passed"] = r.passed();
  return j;
}

ordered_json to_json(const SweepResult & s)
{
  ordered_json j;
  j["schema"] = 1;
  j["command"] = "sweep";
  j["map"] = s.map;
  ordered_json cells = ordered_json::array();
  std::size_t ok = 0;
  for (const auto & c : s.cells) {
    ordered_json cj = to_json(c);
    cj.erase("schema");
    cj.erase("command");
    cells.push_back(std::move(cj));
    ok += c.passed() ? 1 : 0;
  }
  j["cells"] = std::move(cells);
  j["summary"] = {{"cells", s.cells.size()}, {"passed_cells", ok}};
  j["passed"] = s.passed();
  return j;
}

ordered_json to_json(const TablesResult & r)
{
  ordered_json j;
  j["schema"] = 1;
  j["command"] = "tables";
  ordered_json params = ordered_json::object();
  if (r.space == "bcv") {
    params = {{"m", r.m}, {"l", r.l}};
  } else {
    params = {{"eps", r.eps}};
  }
  j["config"] = {{"space", r.space}, {"params", params}, {"points", r.points}, {"seed", r.seed}};
  const auto & t = r.tables;
  j["residuals"] = {{"brackets", t.bracket_deviation},   {"connection", t.connection_deviation},
                    {"curvature", t.curvature_deviation}, {"ricci", t.ricci_deviation},
                    {"levi_civita", t.connection_defect}, {"symmetries", t.symmetry_defect},
                    {"decomposition", t.decomposition_residual}, {"rotated_frames", r.rotated_max}};
  j["rules"] = rules_json(r.rules);
  j["passed"] = r.passed();
  return j;
}

std::string dump_json(const ordered_json & j)
{
  std::string out;
  dump_value(j, out, 0);
  out += "\n";
  return out;
}

std::string to_csv(const CheckResult & r)
{
  std::ostringstream os;
  csv_header(os, r);
  csv_rows(os, r, "");
  return os.str();
}

std::string to_csv(const SweepResult & s)
{
  std::ostringstream os;
  if (s.cells.empty()) { return {}; }
  os << "cell,m,l,eps,case,";
  std::ostringstream head;
  csv_header(head, s.cells.front());
  os << head.str();
  for (std::size_t c = 0; c < s.cells.size(); ++c) {
    const auto & cell = s.cells[c];
    const std::string prefix = std::to_string(c) + "," + opt17(cell.params.m) + "," + opt17(cell.params.l) + "," +
                               opt17(cell.params.eps) + "," + cell.case_label + ",";
    csv_rows(os, cell, prefix);
  }
  return os.str();
}

std::string to_csv(const TablesResult & r)
{
  std::ostringstream os;
  os << "quantity,value,limit,passed\n";
  for (const auto & rr : r.rules) {
    os << rr.name << "," << fmt17(rr.value) << "," << fmt17(rr.limit) << "," << (rr.passed ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace geo3
