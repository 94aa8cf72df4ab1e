#include "mollab/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "mollab/kappa.hpp"
#include "mollab/oracle.hpp"
#include "mollab/siegel.hpp"
#include "mollab/table_io.hpp"
#include "mollab/verify.hpp"

namespace mollab {

namespace {

struct Globals {
  std::optional<double> tol;
  double truncation = 60;
  int jobs = 0;
  bool json = false;
  std::string out_path;
};

struct ModeFlags {
  std::optional<double> beta;
  std::optional<double> R;
  std::string mollifier;
  std::string route = "asymptotic";

  bool general() const { return beta || R || !mollifier.empty(); }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

QuadConfig quad_config(const Globals& g) {
  QuadConfig q;
  if (const char* env = std::getenv("MOLLAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || !(v > 0)) throw UsageError("MOLLAB_TOL must be a positive number");
    q.abs_tol = q.rel_tol = v;
  }
  if (g.tol) q.abs_tol = q.rel_tol = *g.tol;
  q.truncation = g.truncation;
  return q;
}

MollifierSpec parse_mollifier(const std::string& s) {
  if (s.empty() || s == "linear") return MollifierSpec::linear();
  if (s.rfind("sinh:", 0) == 0) {
    char* end = nullptr;
    const std::string num = s.substr(5);
    const double r = std::strtod(num.c_str(), &end);
    if (num.empty() || *end != '\0') throw UsageError("bad sinh parameter: " + s);
    return MollifierSpec::sinh(r);
  }
  throw UsageError("unknown mollifier '" + s + "' (use linear or sinh:<r>)");
}

KappaRoute parse_route(const std::string& s) {
  if (s == "exact") return KappaRoute::Exact;
  if (s == "asymptotic") return KappaRoute::Asymptotic;
  throw UsageError("unknown route '" + s + "' (use exact or asymptotic)");
}

KappaResult compute_kappa(Real theta, const ModeFlags& f, const QuadConfig& q) {
  if (!(theta > 0)) throw UsageError("theta must be positive");
  if (!f.general()) return kappa_special(theta, parse_route(f.route), q);
  const MollifierSpec spec = parse_mollifier(f.mollifier);
  const auto [B, C] = mollifier_moments(spec);
  // Default R balances c0 = c1.
  const Real R = f.R ? static_cast<Real>(*f.R) : std::sqrt(C / (5 * B)) / theta;
  return kappa_general(theta, R, f.beta ? *f.beta : 1.0L, spec, q);
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

RunManifest manifest(const QuadConfig& q, double wall) {
  RunManifest m;
  m.tool_version = kVersion;
  m.tolerances = q;
  m.wall_time_s = wall;
  m.timestamp = utc_now();
  return m;
}

nlohmann::json manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["tool"] = std::string("mollab ") + m.tool_version;
  j["abs_tol"] = static_cast<double>(m.tolerances.abs_tol);
  j["rel_tol"] = static_cast<double>(m.tolerances.rel_tol);
  j["max_depth"] = m.tolerances.max_depth;
  j["truncation_U"] = static_cast<double>(m.tolerances.truncation);
  for (const auto& [k, v] : m.parameters) j[k] = v;
  j["wall_time_s"] = m.wall_time_s;
  j["timestamp"] = m.timestamp;
  return j;
}

nlohmann::json row_json(const TableRow& r) {
  nlohmann::json j = {{"theta", format_real(r.theta)}, {"R", format_real(r.R)},
                      {"beta", format_real(r.beta)},   {"mollifier", r.mollifier}};
  if (r.error.empty()) {
    j["c_pqr"] = format_real(r.c_pqr);
    j["kappa"] = format_real(r.kappa);
  } else {
    j["error"] = r.error;
  }
  return j;
}

// Writes to --out if given, else to out.
void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out_path);
  if (!f) throw UsageError("cannot open " + g.out_path);
  f << text;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (*end != '\0') throw UsageError("bad number in list: " + item);
    v.push_back(x);
  }
  return v;
}

std::vector<double> parse_grid(const std::string& s) {
  const auto parts = [&] {
    std::vector<std::string> p;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) p.push_back(item);
    return p;
  }();
  if (parts.size() != 3) throw UsageError("grid must be lo:hi:n");
  char* e1 = nullptr;
  char* e2 = nullptr;
  char* e3 = nullptr;
  const double lo = std::strtod(parts[0].c_str(), &e1);
  const double hi = std::strtod(parts[1].c_str(), &e2);
  const long n = std::strtol(parts[2].c_str(), &e3, 10);
  if (*e1 || *e2 || *e3 || n < 1 || !(hi >= lo)) throw UsageError("bad grid " + s);
  std::vector<double> v;
  for (long i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return v;
}

int cmd_kappa(const Globals& g, double theta, const ModeFlags& f, std::ostream& out) {
  const QuadConfig q = quad_config(g);
  const auto start = std::chrono::steady_clock::now();
  const KappaResult r = compute_kappa(theta, f, q);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  RunManifest m = manifest(q, wall);
  m.parameters.emplace_back("mode", r.mode_tag == ModeKind::Special ? "special" : "general");
  m.parameters.emplace_back("route", std::string(to_string(r.route)));
  if (r.non_convex) m.parameters.emplace_back("warning", "c0 < 0, minimality not guaranteed");
  const TableRow row = TableRow::from(r);
  if (g.json) {
    nlohmann::json j;
    j["manifest"] = manifest_json(m);
    j["result"] = row_json(row);
    emit(g, out, j.dump(2) + "\n");
  } else if (!g.out_path.empty()) {
    std::ostringstream os;
    write_table_csv(os, {row}, m);
    emit(g, out, os.str());
  } else {
    out << "theta=" << format_real(r.theta) << " R=" << format_real(r.R)
        << " beta=" << format_real(r.beta) << " mollifier=" << r.mollifier
        << " c_pqr=" << format_real(r.c_pqr) << " kappa=" << format_real(r.kappa) << '\n';
    if (r.non_convex) out << "warning: c0 < 0, the stationary S may not be a minimizer\n";
  }
  return kExitOk;
}

int cmd_table(const Globals& g, std::vector<double> thetas, const std::string& grid,
              const ModeFlags& f, std::ostream& out, std::ostream& err) {
  const QuadConfig q = quad_config(g);
  if (!grid.empty()) {
    const auto more = parse_grid(grid);
    thetas.insert(thetas.end(), more.begin(), more.end());
  }
  std::sort(thetas.begin(), thetas.end());
  // Validate flags once up front so usage errors are not reported per row.
  if (f.general()) parse_mollifier(f.mollifier);
  parse_route(f.route);

  const auto start = std::chrono::steady_clock::now();
  std::vector<TableRow> rows(thetas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < thetas.size();) {
      try {
        rows[i] = TableRow::from(compute_kappa(thetas[i], f, q));
      } catch (const std::exception& e) {
        rows[i].theta = thetas[i];
        rows[i].mollifier = f.general() ? parse_mollifier(f.mollifier).tag() : "linear";
        rows[i].error = e.what();
        for (char& ch : rows[i].error) {
          if (ch == ',' || ch == '\n') ch = ';';
        }
      }
    }
  };
  unsigned jobs = g.jobs > 0 ? static_cast<unsigned>(g.jobs) : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(1, thetas.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunManifest m = manifest(q, wall);
  m.parameters.emplace_back("mode", f.general() ? "general" : "special");
  m.parameters.emplace_back("route", f.general() ? "exact" : f.route);
  bool failed = false;
  for (const auto& r : rows) failed = failed || !r.error.empty();
  if (g.json) {
    nlohmann::json j;
    j["manifest"] = manifest_json(m);
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) j["rows"].push_back(row_json(r));
    emit(g, out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_table_csv(os, rows, m);
    emit(g, out, os.str());
  }
  if (failed) err << "some rows failed; see the error column\n";
  return failed ? kExitNumeric : kExitOk;
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open " + path);
  const LoadedTable t = read_table_csv(is);
  std::size_t bad = 0;
  for (const auto& r : t.rows) {
    if (!r.error.empty()) continue;
    const Real gap = r.invariant_gap();
    if (!(gap <= 1e-12L)) {
      ++bad;
      err << "theta=" << format_real(r.theta) << " gap=" << format_real(gap) << '\n';
    }
  }
  out << t.rows.size() << " rows, " << bad << " violate kappa = 1 - log(c_pqr)/R\n";
  return bad ? kExitVerify : kExitOk;
}

int cmd_solve(const Globals& g, double R, double c, double beta, long points, std::ostream& out) {
  if (points < 2) throw UsageError("--points must be at least 2");
  const QuadConfig q = quad_config(g);
  const auto start = std::chrono::steady_clock::now();
  const ClosedFormSolution sol(make_mode_ode(R, c, beta), q);
  const auto n = static_cast<std::size_t>(points - 1);
  const SolutionProfile p = sample_closed_form(sol, n);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  RunManifest m = manifest(q, wall);
  m.parameters.emplace_back("R", format_real(R));
  m.parameters.emplace_back("c", format_real(c));
  m.parameters.emplace_back("beta", format_real(beta));
  m.parameters.emplace_back("C1", format_real(sol.C1()));
  std::ostringstream os;
  if (g.json) {
    nlohmann::json j;
    j["manifest"] = manifest_json(m);
    for (std::size_t i = 0; i <= n; ++i) {
      j["profile"].push_back({p.grid[i], p.values[i], p.derivs[i]});
    }
    os << j.dump(2) << '\n';
  } else {
    for (const auto& line : m.header_lines()) os << line << '\n';
    os << "t,S,Sprime\n";
    for (std::size_t i = 0; i <= n; ++i) {
      os << format_real(p.grid[i]) << ',' << format_real(p.values[i]) << ',' << format_real(p.derivs[i]) << '\n';
    }
  }
  emit(g, out, os.str());
  return kExitOk;
}

int cmd_limit(const Globals& g, double y0, const std::string& list, std::ostream& out) {
  const QuadConfig q = quad_config(g);
  std::vector<Real> Rs;
  for (double r : parse_list(list)) Rs.push_back(r);
  if (Rs.empty()) throw UsageError("--R-list is empty");
  const auto start = std::chrono::steady_clock::now();
  const auto values = step_limit_scan(y0, Rs, q);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  RunManifest m = manifest(q, wall);
  m.parameters.emplace_back("y0", format_real(y0));
  std::ostringstream os;
  if (g.json) {
    nlohmann::json j;
    j["manifest"] = manifest_json(m);
    for (std::size_t i = 0; i < Rs.size(); ++i) j["scan"].push_back({{"R", format_real(Rs[i])}, {"Q", format_real(values[i])}});
    os << j.dump(2) << '\n';
  } else {
    for (const auto& line : m.header_lines()) os << line << '\n';
    os << "R,Q\n";
    for (std::size_t i = 0; i < Rs.size(); ++i) os << format_real(Rs[i]) << ',' << format_real(values[i]) << '\n';
  }
  emit(g, out, os.str());
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& level, double tamper, std::ostream& out) {
  VerifyOptions opts;
  if (level == "quick") {
    opts.level = VerifyLevel::Quick;
  } else if (level == "full") {
    opts.level = VerifyLevel::Full;
  } else {
    throw UsageError("--level must be quick or full");
  }
  opts.tamper_c1 = tamper;
  opts.quad = quad_config(g);
  const VerifyReport rep = run_verify(opts);
  emit(g, out, g.json ? rep.json() + "\n" : rep.text());
  return rep.all_pass() ? kExitOk : kExitVerify;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form mollifier optimization and kappa tables", "mollab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  Globals g;
  app.add_option("--tol", g.tol, "absolute and relative quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--truncation", g.truncation, "upper limit U replacing infinity")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "worker threads for tables (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", g.json, "emit JSON instead of CSV/text");
  app.add_option("--out", g.out_path, "write the output to a file");

  ModeFlags mf;
  auto add_mode_flags = [&](CLI::App* sub) {
    sub->add_option("--beta", mf.beta, "symmetry constant (general mode)");
    sub->add_option("--R", mf.R, "interval half-length (general mode)")->check(CLI::PositiveNumber);
    sub->add_option("--mollifier", mf.mollifier, "linear or sinh:<r> (general mode)");
    sub->add_option("--route", mf.route, "special mode: exact or asymptotic")->capture_default_str();
  };

  double theta = 0;
  auto* kappa = app.add_subcommand("kappa", "kappa for one mollifier length theta");
  kappa->add_option("--theta", theta, "mollifier length")->required();
  add_mode_flags(kappa);

  std::vector<double> thetas;
  std::string grid;
  auto* table = app.add_subcommand("table", "kappa table as CSV");
  table->add_option("thetas", thetas, "theta values");
  table->add_option("--grid", grid, "lo:hi:n equispaced thetas (inclusive)");
  add_mode_flags(table);

  std::string check_path;
  auto* check = app.add_subcommand("check", "reload a cached table CSV and re-verify each row");
  check->add_option("file", check_path, "table CSV")->required();

  double R = 0, c = -1, beta = 1;
  long points = 101;
  auto* solve = app.add_subcommand("solve", "sampled S_R(t) as CSV");
  solve->add_option("--R", R, "interval half-length")->required()->check(CLI::PositiveNumber);
  solve->add_option("--c", c, "ODE coefficient c < 1/4")->capture_default_str();
  solve->add_option("--beta", beta, "symmetry constant")->capture_default_str();
  solve->add_option("--points", points, "number of grid points")->capture_default_str();

  std::string level = "quick";
  double tamper = 0;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--level", level, "quick or full")->capture_default_str();
  verify->add_option("--tamper-c1", tamper, "perturb c1 by this fraction (fault injection)");

  double y0 = 0.75;
  std::string rlist;
  auto* limit = app.add_subcommand("limit", "Q_R(y0) over a list of R");
  limit->add_option("--y0", y0, "point in [0, 1]")->capture_default_str();
  limit->add_option("--R-list", rlist, "comma-separated increasing R values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*kappa) return cmd_kappa(g, theta, mf, out);
    if (*table) return cmd_table(g, thetas, grid, mf, out, err);
    if (*check) return cmd_check(check_path, out, err);
    if (*solve) return cmd_solve(g, R, c, beta, points, out);
    if (*verify) return cmd_verify(g, level, tamper, out);
    if (*limit) return cmd_limit(g, y0, rlist, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace mollab
