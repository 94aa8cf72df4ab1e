#pragma once

// CSV tables with a '#'-prefixed manifest header.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mollab/kappa.hpp"

namespace mollab {

struct TableRow {
  Real theta = 0;
  Real R = 0;
  Real beta = 1;
  std::string mollifier = "linear";
  Real c_pqr = 0;
  Real kappa = 0;
  std::string error;  // empty on success

  static TableRow from(const KappaResult& r);
  /// |kappa - (1 - log(c_pqr) / R)|.
  Real invariant_gap() const;
};

struct RunManifest {
  std::string tool_version;
  QuadConfig tolerances;
  std::vector<std::pair<std::string, std::string>> parameters;
  double wall_time_s = 0;
  std::string timestamp;

  /// Header lines, each starting with "# ". The timestamp and wall time are
  /// the only run-dependent lines.
  std::vector<std::string> header_lines() const;
};

/// Real as text with 15 significant digits.
std::string format_real(Real x);

/// theta,R,beta,mollifier,c_pqr,kappa[,error]; the error column appears only
/// when some row failed.
void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows, const RunManifest& m);

struct LoadedTable {
  std::vector<std::string> header;  // manifest lines without the "# " prefix
  std::vector<TableRow> rows;
};

/// Throws InvalidArgument on malformed input.
LoadedTable read_table_csv(std::istream& is);

}  // namespace mollab
