#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "peq/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Cli {
  int code = -1;
  std::string out, err;
};

Cli call(std::vector<std::string> args) {
  args.insert(args.begin(), "peqlab");
  std::ostringstream o, e;
  Cli r;
  r.code = peqlab::run_cli(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

std::string write_config(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "peq_cli";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  peq::write_text(path.string(), body + "\n[output]\ndir = " + (dir / (name + "_out")).string() + "\n");
  return path.string();
}

const char* kSmall = "[physics]\nlx = 2\n[grid]\nnx = 8\nny = 4\nnz = 4\n[time]\ndt = 0.05\nt_end = 0.5\n[tail]\nradii = 0.5\n";

}  // namespace

TEST(Cli, RunZeroPresetGivesZeroSeries) {
  const auto cfg = write_config("zero.cfg", kSmall);
  const Cli r = call({"run", cfg});
  EXPECT_EQ(r.code, 0) << r.err;
  const peq::Table t = peq::read_table(cfg + "_out/timeseries.csv");
  ASSERT_EQ(t.rows.size(), 11u);
  for (const auto& row : t.rows)
    for (std::size_t c = 1; c < row.size(); ++c) EXPECT_EQ(row[c].value_or(0.0), 0.0);
  EXPECT_TRUE(fs::exists(cfg + "_out/final.peq"));
  EXPECT_TRUE(fs::exists(cfg + "_out/energies.svg"));
}

TEST(Cli, ZeroToleranceForcesCheckFailure) {
  const auto cfg = write_config("strict.cfg", std::string(kSmall) +
                                                  "[initial]\npreset = gaussian-blob\nvelocity_amplitude = 0.5\n"
                                                  "[checks]\ndiv_tol = 0\npoincare_tol = 0\nenvelope_tol = 0\n");
  const Cli r = call({"run", cfg});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
  EXPECT_NE(r.out.find("violation"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitOne) {
  const auto cfg = write_config("bad.cfg", "[physics]\nalpha = -1\n");
  const Cli r = call({"run", cfg});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("alpha"), std::string::npos);
  EXPECT_EQ(call({"run", "/no/such/file.cfg"}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({}).code, 1);
}

TEST(Cli, NumericalBlowUpExitsTwo) {
  const auto cfg = write_config("blowup.cfg",
                                "[physics]\nlx = 2\n[grid]\nnx = 8\nny = 4\nnz = 4\n[tail]\nradii = 0.5\n"
                                "[initial]\npreset = gaussian-blob\nvelocity_amplitude = 1000\nwidth = 0.5\n"
                                "[time]\ndt = 1\nt_end = 200\n");
  const Cli r = call({"run", cfg});
  EXPECT_EQ(r.code, 2) << r.out << r.err;
  EXPECT_NE(r.err.find("last valid time"), std::string::npos);
}

TEST(Cli, MmsDefaultPasses) {
  const auto cfg = write_config("mms.cfg", "[physics]\nlx = 1\n");
  const Cli r = call({"mms", cfg});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("observed order"), std::string::npos);
  EXPECT_TRUE(fs::exists(cfg + "_out/mms.csv"));
}

TEST(Cli, PlotWritesSvg) {
  const auto cfg = write_config("plot.cfg", std::string(kSmall) + "[initial]\npreset = gaussian-blob\n");
  ASSERT_EQ(call({"run", cfg}).code, 0);
  const std::string csv = cfg + "_out/timeseries.csv";
  const std::string svg = cfg + "_out/p.svg";
  const Cli r = call({"plot", csv, "l2_T,l2_v", "--envelope", "--config", cfg, "-o", svg});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(peq::read_text(svg).find("envelope"), std::string::npos);
  EXPECT_EQ(call({"plot", csv, "nope"}).code, 1);
}

TEST(Cli, ExperimentSubcommandsRun) {
  const auto cfg = write_config("exp.cfg", std::string(kSmall) +
                                               "[forcing]\npreset = gaussian-blob\nwidth = 0.2\n"
                                               "[initial]\npreset = gaussian-blob\nwidth = 0.2\n"
                                               "[truncate]\nlevels = 2\nmax_rel_diff = 1\n");
  const Cli t = call({"tail", cfg});
  EXPECT_TRUE(t.code == 0 || t.code == 3) << t.err;
  EXPECT_TRUE(fs::exists(cfg + "_out/tail.csv"));
  EXPECT_EQ(call({"truncate", cfg}).code, 0);
  const Cli c = call({"contract", cfg});
  EXPECT_EQ(c.code, 0) << c.out;
  EXPECT_TRUE(fs::exists(cfg + "_out/contract.csv"));
}
