#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mollab/table_io.hpp"

using namespace mollab;

namespace {

RunManifest manifest() {
  RunManifest m;
  m.tool_version = "test";
  m.parameters = {{"mode", "special"}};
  m.wall_time_s = 0.5;
  m.timestamp = "2026-01-01T00:00:00Z";
  return m;
}

}  // namespace

TEST(TableIo, FormatReal) {
  EXPECT_EQ(format_real(0.5L), "0.5");
  EXPECT_EQ(format_real(1.0L / 3), "0.333333333333333");
}

TEST(TableIo, RoundTrip) {
  std::vector<TableRow> rows = {TableRow::from(kappa_special(0.5L)), TableRow::from(kappa_special(0.25L))};
  std::ostringstream os;
  write_table_csv(os, rows, manifest());
  EXPECT_EQ(os.str().find(",error"), std::string::npos);
  std::istringstream is(os.str());
  const LoadedTable t = read_table_csv(is);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_FALSE(t.header.empty());
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(static_cast<double>(t.rows[i].kappa), static_cast<double>(rows[i].kappa), 1e-14);
    EXPECT_EQ(t.rows[i].mollifier, "linear");
    EXPECT_LT(t.rows[i].invariant_gap(), 1e-13);
  }
}

TEST(TableIo, ErrorColumnOnlyWhenNeeded) {
  TableRow bad;
  bad.theta = 3;
  bad.error = "NonPositiveArgument";
  std::ostringstream os;
  write_table_csv(os, {TableRow::from(kappa_special(0.5L)), bad}, manifest());
  EXPECT_NE(os.str().find("kappa,error"), std::string::npos);
  std::istringstream is(os.str());
  const LoadedTable t = read_table_csv(is);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_TRUE(t.rows[0].error.empty());
  EXPECT_EQ(t.rows[1].error, "NonPositiveArgument");
  EXPECT_TRUE(std::isnan(t.rows[1].kappa));
}

TEST(TableIo, HeaderOnlyTable) {
  std::ostringstream os;
  write_table_csv(os, {}, manifest());
  std::istringstream is(os.str());
  EXPECT_TRUE(read_table_csv(is).rows.empty());
}

TEST(TableIo, Malformed) {
  std::istringstream missing("# only a header\n");
  EXPECT_THROW(read_table_csv(missing), Error);
  std::istringstream fields("theta,R,beta,mollifier,c_pqr,kappa\n1,2,3\n");
  EXPECT_THROW(read_table_csv(fields), Error);
}

TEST(TableIo, ManifestLines) {
  const auto lines = manifest().header_lines();
  ASSERT_FALSE(lines.empty());
  bool has_ts = false;
  for (const auto& l : lines) {
    EXPECT_EQ(l.rfind("# ", 0), 0u);
    has_ts = has_ts || l.find("2026-01-01T00:00:00Z") != std::string::npos;
  }
  EXPECT_TRUE(has_ts);
}
