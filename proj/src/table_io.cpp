#include "mollab/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace mollab {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Real parse_real(const std::string& s) {
  char* end = nullptr;
  const Real v = std::strtold(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

TableRow TableRow::from(const KappaResult& r) {
  TableRow row;
  row.theta = r.theta;
  row.R = r.R;
  row.beta = r.beta;
  row.mollifier = r.mollifier;
  row.c_pqr = r.c_pqr;
  row.kappa = r.kappa;
  return row;
}

Real TableRow::invariant_gap() const { return std::fabs(kappa - (1 - std::log(c_pqr) / R)); }

std::string format_real(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", x);
  return buf;
}

std::vector<std::string> RunManifest::header_lines() const {
  std::vector<std::string> out;
  out.push_back("# tool: mollab " + tool_version);
  out.push_back("# abs_tol: " + format_real(tolerances.abs_tol));
  out.push_back("# rel_tol: " + format_real(tolerances.rel_tol));
  out.push_back("# max_depth: " + std::to_string(tolerances.max_depth));
  out.push_back("# truncation_U: " + format_real(tolerances.truncation));
  for (const auto& [k, v] : parameters) out.push_back("# " + k + ": " + v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", wall_time_s);
  out.push_back(std::string("# wall_time_s: ") + buf);
  if (!timestamp.empty()) out.push_back("# timestamp: " + timestamp);
  return out;
}

void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows, const RunManifest& m) {
  for (const auto& line : m.header_lines()) os << line << '\n';
  bool any_error = false;
  for (const auto& r : rows) any_error = any_error || !r.error.empty();
  os << "theta,R,beta,mollifier,c_pqr,kappa" << (any_error ? ",error" : "") << '\n';
  for (const auto& r : rows) {
    os << format_real(r.theta) << ',' << format_real(r.R) << ',' << format_real(r.beta) << ','
       << r.mollifier << ',';
    if (r.error.empty()) {
      os << format_real(r.c_pqr) << ',' << format_real(r.kappa);
    } else {
      os << "nan,nan";
    }
    if (any_error) os << ',' << r.error;
    os << '\n';
  }
}

LoadedTable read_table_csv(std::istream& is) {
  LoadedTable t;
  std::string line;
  bool have_columns = false;
  bool has_error_col = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.header.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    if (!have_columns) {
      if (line.rfind("theta,R,beta,mollifier,c_pqr,kappa", 0) != 0) {
        throw Error(ErrorCode::InvalidArgument, "unexpected column header: " + line);
      }
      has_error_col = line.find(",error") != std::string::npos;
      have_columns = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != (has_error_col ? 7u : 6u)) {
      throw Error(ErrorCode::InvalidArgument, "wrong field count: " + line);
    }
    TableRow r;
    r.theta = parse_real(f[0]);
    r.R = parse_real(f[1]);
    r.beta = parse_real(f[2]);
    r.mollifier = f[3];
    r.c_pqr = parse_real(f[4]);
    r.kappa = parse_real(f[5]);
    if (has_error_col) r.error = f[6];
    t.rows.push_back(r);
  }
  if (!have_columns) throw Error(ErrorCode::InvalidArgument, "missing column header");
  return t;
}

}  // namespace mollab
