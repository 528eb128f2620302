#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ssmud/cli/commands.hpp"
#include "ssmud/cli/config.hpp"
#include "ssmud/cli/csv.hpp"

using namespace ssmud;
using namespace ssmud::cli;

TEST(Config, ParsesKeysCommentsAndDecibels) {
  RunConfig c;
  apply_text(c,
             "# header\n"
             "k = 5\n"
             "L=2   # trailing comment\n"
             "\n"
             "m=2\n"
             "p_av_db=10\n"
             "i_av=0.5\n"
             "policy=PIP\n"
             "sim_mode=iid_ratio\n");
  finalize(c);
  EXPECT_EQ(c.system.K, 5);
  EXPECT_EQ(c.system.L, 2);
  EXPECT_EQ(c.system.secondaryFading.m(), 2.0);
  EXPECT_EQ(c.system.crossFading.m(), 2.0);
  EXPECT_DOUBLE_EQ(c.pAv, 10.0);
  EXPECT_EQ(c.iAv, 0.5);
  EXPECT_EQ(c.policy, PolicyKind::Pip);
  EXPECT_EQ(c.sim.mode, mc::SimMode::IidRatio);
  EXPECT_EQ(c.constraints().interferenceMode, InterferenceMode::Peak);
  EXPECT_EQ(c.constraints().interference, c.iPk);
}

TEST(Config, OverridesApplyAfterFile) {
  RunConfig c;
  apply_text(c, "k=3\nseed=4\n");
  apply_overrides(c, {"k=7", "seed=99"});
  EXPECT_EQ(c.system.K, 7);
  EXPECT_EQ(c.sim.seed, 99u);
}

TEST(Config, ErrorsNameKeyAndLine) {
  RunConfig c;
  try {
    apply_text(c, "k=1\n\nbogus=3\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "bogus");
    EXPECT_EQ(e.line(), 3);
    EXPECT_STREQ(e.what(), "config key 'bogus' at line 3: unknown key");
  }
  EXPECT_THROW(apply_text(c, "m=0.3\n"), ConfigError);
  EXPECT_THROW(apply_text(c, "k=two\n"), ConfigError);
  EXPECT_THROW(apply_text(c, "k=\n"), ConfigError);
  EXPECT_THROW(apply_text(c, "justakey\n"), ConfigError);
  EXPECT_THROW(apply_overrides(c, {"policy=both"}), ConfigError);
  EXPECT_THROW(apply_text(c, "scenarios=1:1:aip\n"), ConfigError);
}

TEST(Config, FinalizeChecksCrossKeyInvariants) {
  RunConfig c;
  apply_text(c, "k=0\n");
  EXPECT_THROW(finalize(c), ConfigError);
  RunConfig s;
  apply_text(s, "axis=Pav_dB\nfrom_db=5\nto_db=0\nscenarios=1:1:1:aip\n");
  EXPECT_THROW(finalize(s), ConfigError);
}

TEST(Config, SweepAxisValues) {
  RunConfig c;
  apply_text(c, "axis=Iav_dB\nfrom_db=-1\nto_db=1\nstep_db=0.5\nscenarios=5:2:1:aip; 1:1:2:pip\n");
  finalize(c);
  ASSERT_TRUE(c.sweep);
  EXPECT_EQ(c.sweep->axis_values(), (std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}));
  ASSERT_EQ(c.sweep->scenarios.size(), 2u);
  EXPECT_EQ(c.sweep->scenarios[0], (Scenario{5, 2, 1.0, PolicyKind::Aip}));
  EXPECT_EQ(c.sweep->scenarios[1], (Scenario{1, 1, 2.0, PolicyKind::Pip}));
}

TEST(Config, KnownKeysIncludeDecibelTwins) {
  const auto keys = known_keys();
  for (const char* k : {"p_av", "p_av_db", "i_pk_db", "scenarios", "formulation"}) {
    EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;
  }
}

TEST(Csv, FormatFixed) {
  EXPECT_EQ(format_fixed(0.0), "0");
  EXPECT_EQ(format_fixed(1.0), "1.000000000");
  EXPECT_EQ(format_fixed(0.001234567890123), "0.001234567890");
  EXPECT_EQ(format_fixed(-12.5), "-12.50000000");
  EXPECT_EQ(format_fixed(9.9999999999), "10.00000000");
  EXPECT_EQ(format_fixed(123456789012.0), "123456789012");
  EXPECT_EQ(format_fixed(1e-300), "0." + std::string(39, '0') + "0");
  EXPECT_EQ(format_fixed(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_fixed(std::nan("")), "nan");
}

TEST(Csv, Rfc4180Quoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  std::ostringstream out;
  write_csv_row(out, {"x", "y,z", ""});
  EXPECT_EQ(out.str(), "x,\"y,z\",\n");
}

TEST(Sweep, CsvShapeAndDeterminism) {
  RunConfig c;
  apply_text(c, "p_av_db=5\naxis=Iav_dB\nfrom_db=0\nto_db=5\nstep_db=5\nscenarios=2:1:1:aip, 2:1:1:pip\n");
  finalize(c);
  std::ostringstream a, b;
  write_sweep_csv(run_sweep(c), c.sweep->axis, c.formulation, a);
  c.sim.threads = 1;
  write_sweep_csv(run_sweep(c), c.sweep->axis, c.formulation, b);
  EXPECT_EQ(a.str(), b.str());
  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "axis_name,axis_dB,K,L,m,policy,lambda,mu,capacity_bps_hz,outage,eP,eI,formulation");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("Iav_dB,", 0), 0u) << line;
  }
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(a.str().find('\r'), std::string::npos);
}

TEST(Sweep, FailedRowsAddErrorColumn) {
  SweepOutcome o;
  SweepRow bad;
  bad.axisDb = 1.0;
  bad.scenario = {1, 1, 1.0, PolicyKind::Aip};
  bad.error = "solver: boom, twice";
  o.rows.push_back(bad);
  o.failures = 1;
  std::ostringstream out;
  write_sweep_csv(o, SweepAxis::PavDb, Formulation::Joint2D, out);
  EXPECT_EQ(out.str(),
            "axis_name,axis_dB,K,L,m,policy,lambda,mu,capacity_bps_hz,outage,eP,eI,formulation,error\n"
            "Pav_dB,1.000000000,1,1,1.000000000,AIP,,,,,,,Joint2D,\"solver: boom, twice\"\n");
}

TEST(Validation, CheckFormat) {
  EXPECT_EQ(format_check({"norm.x", Check::Status::Pass, 1.5e-9, 1e-6}),
            "PASS norm.x measured=1.500000e-09 bound=1.000000e-06");
  EXPECT_EQ(format_check({"gap", Check::Status::Info, 0.25, 0.0}), "INFO gap measured=2.500000e-01 bound=0.000000e+00");
  EXPECT_STREQ(to_string(Check::Status::Fail), "FAIL");
}

TEST(Solve, ReportHasBindingSet) {
  RunConfig c;
  apply_text(c, "k=5\nl=2\np_av_db=5\ni_av_db=5\n");
  finalize(c);
  std::ostringstream out;
  write_solve_report(c, solve(c.system, c.constraints(), c.solver), out);
  EXPECT_NE(out.str().find("binding_set=Both\n"), std::string::npos);
  EXPECT_EQ(out.str().rfind("policy=AIP\n", 0), 0u);
}

TEST(Dist, TableColumns) {
  RunConfig c;
  apply_text(c, "k=5\nl=1\nm=1\nz_max=2\nz_points=3\n");
  finalize(c);
  std::ostringstream out;
  write_distribution(c, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "z,pdf,cdf,mud_pdf,mud_cdf");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0,1.000000000,0,", 0), 0u) << line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("1.000000000,0.2500000000,0.5000000000,", 0), 0u) << line;
}
