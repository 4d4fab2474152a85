#include <cmath>
#include <sstream>

#include "doctest.h"
#include "pabp/sweep.hpp"

using namespace pabp;

namespace {

SweepConfig base_config() {
  SweepConfig config;
  config.t = 3000;
  config.m = 3;
  config.delta = 0.0;
  config.r = 2;
  config.trials = 5;
  config.base_seed = 99;
  return config;
}

std::string csv_of(const std::vector<TrialResult>& rows) {
  std::ostringstream out;
  write_sweep_csv(rows, out);
  return out.str();
}

}  // namespace

TEST_SUITE("sweep points") {
  TEST_CASE("preset seeding rules") {
    SweepConfig config = base_config();
    const double ac = std::pow(3000.0, 0.5);
    const double logt = std::log(3000.0);

    config.preset = SweepPreset::supercritical;
    auto points = sweep_points(config);
    REQUIRE(points.size() == 1);
    CHECK(points[0].a == doctest::Approx(ac * logt));

    config.preset = SweepPreset::subcritical_iii;
    points = sweep_points(config);
    CHECK(points[0].a == doctest::Approx(ac / logt));

    config.r = 3;
    config.preset = SweepPreset::subcritical_ii;
    points = sweep_points(config);
    CHECK(points[0].a == doctest::Approx(ac / (logt * logt)));

    config.preset = SweepPreset::lambda_grid;
    config.lambdas = {0.5, 2.0};
    points = sweep_points(config);
    REQUIRE(points.size() == 2);
    CHECK(points[0].a == doctest::Approx(0.5 * ac));
    CHECK(points[1].lambda == doctest::Approx(2.0));
  }

  TEST_CASE("hypothesis gates") {
    SweepConfig config = base_config();
    config.preset = SweepPreset::supercritical;
    config.r = 3;  // needs r < m = 3
    CHECK_THROWS_AS(sweep_points(config), std::invalid_argument);

    config = base_config();
    config.preset = SweepPreset::subcritical_i;
    config.r = 2;  // gamma = 1/2, r gamma = 1 is not > 1
    CHECK_THROWS_AS(sweep_points(config), std::invalid_argument);
    config.delta = -1.0;  // gamma = 3/5, r gamma = 1.2
    CHECK_NOTHROW(sweep_points(config));

    config = base_config();
    config.preset = SweepPreset::subcritical_ii;
    config.r = 2;  // needs r >= 3
    CHECK_THROWS_AS(sweep_points(config), std::invalid_argument);

    config = base_config();
    config.preset = SweepPreset::subcritical_iii;
    config.r = 3;  // needs r = 2
    CHECK_THROWS_AS(sweep_points(config), std::invalid_argument);

    config = base_config();
    config.preset = SweepPreset::critical;
    config.r = 2;  // needs r >= 3
    CHECK_THROWS_AS(sweep_points(config), std::invalid_argument);

    config = base_config();
    config.trials = 0;
    CHECK_THROWS_AS(sweep_points(config), std::invalid_argument);

    config = base_config();
    config.preset = SweepPreset::lambda_grid;
    config.lambdas = {1.0, -2.0};
    CHECK_THROWS_AS(sweep_points(config), std::invalid_argument);
  }

  TEST_CASE("preset names round trip") {
    for (SweepPreset preset :
         {SweepPreset::lambda_grid, SweepPreset::supercritical, SweepPreset::subcritical_i,
          SweepPreset::subcritical_ii, SweepPreset::subcritical_iii, SweepPreset::critical}) {
      CHECK(parse_preset(preset_name(preset)) == preset);
    }
    CHECK_THROWS_AS(parse_preset("bogus"), std::invalid_argument);
  }
}

TEST_SUITE("run_sweep") {
  TEST_CASE("identical config gives byte-identical CSV") {
    SweepConfig config = base_config();
    config.preset = SweepPreset::lambda_grid;
    config.lambdas = {0.5, 4.0};
    const std::string first = csv_of(run_sweep(config));
    const std::string second = csv_of(run_sweep(config));
    CHECK(first == second);
    CHECK(first.find("\r") == std::string::npos);  // LF endings
  }

  TEST_CASE("results are independent of the worker count") {
    SweepConfig config = base_config();
    config.preset = SweepPreset::lambda_grid;
    config.lambdas = {1.0, 8.0};
    config.threads = 1;
    const std::string serial = csv_of(run_sweep(config));
    config.threads = 4;
    const std::string parallel = csv_of(run_sweep(config));
    CHECK(serial == parallel);
  }

  TEST_CASE("outbreak fraction grows across the lambda grid") {
    SweepConfig config = base_config();
    config.t = 5000;
    config.preset = SweepPreset::lambda_grid;
    config.lambdas = {0.1, 30.0};
    config.trials = 20;
    const auto rows = run_sweep(config);
    int full_lo = 0, full_hi = 0;
    for (const TrialResult& row : rows) {
      (row.point == 0 ? full_lo : full_hi) += row.full;
    }
    CHECK(full_hi >= full_lo);
    CHECK(full_hi >= 18);  // lambda = 30 sits deep in the supercritical side
  }

  TEST_CASE("rows carry the folklore bound when r > m") {
    SweepConfig config = base_config();
    config.m = 2;
    config.r = 3;
    config.preset = SweepPreset::lambda_grid;
    config.lambdas = {2.0};
    config.trials = 10;
    for (const TrialResult& row : run_sweep(config)) {
      CHECK(static_cast<std::uint64_t>(row.i_f) * (config.r - config.m) <=
            static_cast<std::uint64_t>(config.r) * row.i0);
    }
  }
}

TEST_SUITE("summarize") {
  TEST_CASE("single row summarizes to itself") {
    std::istringstream in(
        "t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full\n"
        "100,2,0,2,10,1,0,0,10,20,3,0\n");
    const auto summary = summarize(in);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].trials == 1);
    CHECK(summary[0].frac_full == doctest::Approx(0.0));
    CHECK(summary[0].median_ratio == doctest::Approx(2.0));
    CHECK(summary[0].max_rounds == 3);
  }

  TEST_CASE("all-full file has fraction one") {
    std::ostringstream text;
    text << "t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full\n";
    for (int k = 0; k < 5; ++k) {
      text << "100,2,0,2,10,1," << k << ",0,10,100,4,1\n";
    }
    std::istringstream in(text.str());
    const auto summary = summarize(in);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].frac_full == doctest::Approx(1.0));
  }

  TEST_CASE("mixed file with a known 7/10 composition") {
    std::ostringstream text;
    text << "t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full\n";
    for (int k = 0; k < 10; ++k) {
      const bool full = k < 7;
      text << "100,2,0,2,10,1," << k << ",0,10," << (full ? 100 : 11) << ",2,"
           << (full ? 1 : 0) << "\n";
    }
    std::istringstream in(text.str());
    const auto summary = summarize(in);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].frac_full == doctest::Approx(0.7));
  }

  TEST_CASE("empty initial sets count as ratio one") {
    std::istringstream in(
        "t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full\n"
        "100,2,0,2,0.5,1,0,0,0,0,0,0\n");
    const auto summary = summarize(in);
    CHECK(summary[0].median_ratio == doctest::Approx(1.0));
  }

  TEST_CASE("schema mismatches are rejected") {
    std::istringstream wrong_header("a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(summarize(wrong_header), std::runtime_error);
    std::istringstream short_row(
        "t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full\n1,2,3\n");
    CHECK_THROWS_AS(summarize(short_row), std::runtime_error);
    std::istringstream bad_field(
        "t,m,delta,r,a,lambda,trial,seed,i0,if,rounds,full\n"
        "100,2,0,2,10,1,0,0,x,100,4,1\n");
    CHECK_THROWS_AS(summarize(bad_field), std::runtime_error);
  }

  TEST_CASE("sweep output feeds straight into summarize") {
    SweepConfig config = base_config();
    config.preset = SweepPreset::lambda_grid;
    config.lambdas = {0.2, 5.0};
    const auto rows = run_sweep(config);
    std::istringstream in(csv_of(rows));
    const auto summary = summarize(in);
    REQUIRE(summary.size() == 2);
    CHECK(summary[0].trials == config.trials);
    std::ostringstream out;
    write_summary(summary, out);
    CHECK(out.str().rfind("t,m,delta,r,a,lambda,trials,", 0) == 0);
  }
}
