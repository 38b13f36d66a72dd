#include <cmath>
#include <cstdio>

#include "cdsim/analysis.hpp"
#include "cdsim/sweep_io.hpp"
#include "doctest.h"

using namespace cdsim;

namespace {
const double kRoot2 = std::sqrt(2.0);
}

TEST_CASE("metric parsing") {
    CHECK(parse_metric("witness").kind == MetricKind::witness);
    CHECK(parse_metric("N13").cut == std::vector<int>{0, 2});
    CHECK(parse_metric("n14").cut == std::vector<int>{0, 3});
    CHECK(parse_metric("F_Rotation").kind == MetricKind::rotation_fidelity);
    CHECK(parse_metric("f_pair(2,4)").pair == PairSpec{2, 4});
    CHECK(parse_metric("C_PAIR14").kind == MetricKind::pair_lambda);
    CHECK(parse_metric("purity").kind == MetricKind::purity);
    CHECK_THROWS(parse_metric("n15"));
    CHECK_THROWS(parse_metric("f_pair12"));
    CHECK_THROWS(parse_metric("entropy"));

    CHECK(metric_angle_slots(parse_metric("witness")).empty());
    CHECK(metric_angle_slots(parse_metric("f_rotation")) == std::vector<int>{1, 2, 3});
    CHECK(metric_angle_slots(parse_metric("c_pair14")) == std::vector<int>{2, 3});
}

TEST_CASE("find_threshold locates sign changes") {
    auto witness = [](double p) { return forms::witness_c4(p); };
    CHECK(std::abs(find_threshold(witness, 0.0, 1.0, 1e-12) - (2.0 - kRoot2)) < 1e-10);

    auto n13h = [](double p) { return forms::n13_c4h(p); };
    CHECK(std::abs(find_threshold(n13h, 0.0, 1.0, 1e-12) - 0.938) < 1e-3);

    auto linear = [](double p) { return p - 0.5; };
    CHECK(std::abs(find_threshold(linear, 0.0, 1.0, 1e-12) - 0.5) < 1e-12);

    auto positive = [](double p) { return p + 1.0; };
    CHECK_THROWS(find_threshold(positive, 0.0, 1.0, 1e-12));
    CHECK_THROWS(find_threshold(linear, 0.0, 1.0, 1e-15));  // tolerance too tight
}

TEST_CASE("first_crossing and negative_support_end") {
    auto below_at_lo = [](double p) { return p - 0.3; };  // negative from the start
    auto crossing = first_crossing(below_at_lo, 0.0, 1.0, 64);
    REQUIRE(crossing.has_value());
    CHECK(*crossing == 0.0);

    auto dip = [](double p) { return 0.2 - p; };  // negative past 0.2
    auto onset = first_crossing(dip, 0.0, 1.0, 256);
    REQUIRE(onset.has_value());
    CHECK(std::abs(*onset - 0.2) < 1e-9);

    CHECK(!first_crossing([](double) { return 1.0; }, 0.0, 1.0, 64).has_value());

    auto end = negative_support_end([](double p) { return forms::witness_c4(p); }, 0.0, 1.0);
    REQUIRE(end.has_value());
    CHECK(std::abs(*end - (2.0 - kRoot2)) < 1e-9);
    CHECK(!negative_support_end([](double) { return -1.0; }, 0.0, 1.0).has_value());
    auto whole = negative_support_end([](double) { return 1.0; }, 0.0, 1.0);
    REQUIRE(whole.has_value());
    CHECK(*whole == 0.0);
}

TEST_CASE("threshold reports per quantity") {
    const ThresholdReport witness = threshold_report("witness", Rep::c4, {0, 0, 0, 0});
    REQUIRE(witness.root.has_value());
    CHECK(std::abs(*witness.root - (2.0 - kRoot2)) < 1e-9);
    CHECK(witness.method == "grid+refine");

    const ThresholdReport none = threshold_report("n13", Rep::c4, {0, 0, 0, 0});
    CHECK(!none.root.has_value());

    const ThresholdReport pair = threshold_report("f_pair24", Rep::c4, {0.7, 0.0, 1.9, 0.0});
    REQUIRE(pair.root.has_value());
    CHECK(std::abs(*pair.root - (2.0 - kRoot2)) < 1e-8);
    CHECK(pair.method == "bisection");

    CHECK_THROWS(threshold_report("purity", Rep::c4, {0, 0, 0, 0}));
}

TEST_CASE("sweep reproduces the quadratic witness curve") {
    SweepConfig config;
    config.rep = Rep::c4;
    config.metrics = {"witness"};
    for (int i = 0; i <= 100; ++i) config.p_values.push_back(i / 100.0);
    const SweepResult result = sweep(config);
    REQUIRE(result.records.size() == 101);
    REQUIRE(result.axes.size() == 1);
    CHECK(result.axes[0].name == "p");
    CHECK(result.metric_names == std::vector<std::string>{"witness"});
    for (const std::vector<double>& row : result.records) {
        const double p = row[0];
        CHECK(std::abs(row[1] - (-(p * p - 4.0 * p + 2.0) / 4.0)) < 1e-10);
    }
    // p = 0 row of any fidelity sweep is exactly 1
    SweepConfig fid;
    fid.rep = Rep::c4h;
    fid.metrics = {"f_rotation"};
    fid.p_values = {0.0};
    fid.theta_fixed = {1.2, 0.4, 3.3, 0.0};
    CHECK(std::abs(sweep(fid).records[0][1] - 1.0) < 1e-12);
}

TEST_CASE("rotation sweep varies only through the angle sum") {
    SweepConfig config;
    config.rep = Rep::c4;
    config.metrics = {"f_rotation"};
    config.fixed_profile = DephasingProfile::uniform(0.4);
    for (int i = 0; i < 7; ++i) {
        config.theta_values[0].push_back(i * 0.9);
        config.theta_values[1].push_back(i * 0.9);
    }
    const SweepResult result = sweep(config);
    REQUIRE(result.records.size() == 49);
    // bucket by rounded angle sum; each bucket must be constant
    for (const std::vector<double>& a : result.records)
        for (const std::vector<double>& b : result.records)
            if (std::abs((a[0] + a[1]) - (b[0] + b[1])) < 1e-12)
                CHECK(std::abs(a[2] - b[2]) < 1e-10);
}

TEST_CASE("sweep validates its configuration") {
    SweepConfig config;
    config.metrics = {};
    CHECK_THROWS(sweep(config));  // no metrics

    config.metrics = {"witness"};
    CHECK_THROWS(sweep(config));  // no dephasing source

    config.p_values = {0.0, 0.5};
    config.fixed_profile = DephasingProfile::uniform(0.1);
    CHECK_THROWS(sweep(config));  // both sources

    config.fixed_profile.reset();
    config.theta_values[2] = {0.0, 1.0};
    CHECK_THROWS(sweep(config));  // angle grid on a slot the witness ignores

    config.theta_values[2].clear();
    config.metrics = {"witness", "witness"};
    CHECK_THROWS(sweep(config));  // duplicate metric

    config.metrics = {"witness"};
    config.q = 1.5;
    CHECK_THROWS(sweep(config));  // bad mixing weight

    config.q = 1.0;
    config.p_values = {0.0, 2.0};
    CHECK_THROWS(sweep(config));  // p outside [0, 1]
}

TEST_CASE("ppt patterns of dephased registers") {
    const PptPattern pure = ppt_pattern(cluster_state(Rep::c4));
    for (int i = 0; i < 4; ++i) CHECK(pure.npt[i]);
    CHECK(!pure.bound_flag);

    const PptPattern mid = ppt_pattern(dephased_cluster(Rep::c4, 0.7));
    CHECK(mid.npt[0]);        // {0}
    CHECK(!mid.npt[1]);       // {0,1}
    CHECK(mid.npt[2]);        // {0,2}
    CHECK(mid.npt[3]);        // {0,3}
    CHECK(mid.bound_flag);

    const PptPattern late = ppt_pattern(dephased_cluster(Rep::c4h, 0.9));
    CHECK(!late.npt[0]);
    CHECK(!late.npt[1]);
    CHECK(late.npt[2]);
    CHECK(!late.npt[3]);
    CHECK(late.bound_flag);

    CHECK(ppt_cut_label(1) == "{0,1}");
    CHECK_THROWS(ppt_pattern(partial_trace(cluster_state(Rep::c4), {0, 1})));
}

TEST_CASE("ppt transition boundaries") {
    const auto c4 = ppt_transitions(Rep::c4);
    CHECK(!c4[0].has_value());
    REQUIRE(c4[1].has_value());
    CHECK(std::abs(*c4[1] - (2.0 - kRoot2)) < 1e-6);
    CHECK(!c4[2].has_value());
    CHECK(!c4[3].has_value());

    const auto c4h = ppt_transitions(Rep::c4h);
    REQUIRE(c4h[0].has_value());
    REQUIRE(c4h[1].has_value());
    REQUIRE(c4h[2].has_value());
    REQUIRE(c4h[3].has_value());
    CHECK(std::abs(*c4h[0] - (2.0 * kRoot2 - 2.0)) < 1e-6);
    CHECK(std::abs(*c4h[1] - (2.0 * kRoot2 - 2.0)) < 1e-6);
    CHECK(std::abs(*c4h[2] - 0.9379798870808616) < 1e-6);
    CHECK(std::abs(*c4h[3] - (2.0 * kRoot2 - 2.0)) < 1e-6);
}

TEST_CASE("extremal crossings on coarse grids") {
    // angle-independent ESD of the plain register: min == max
    const ExtremalResult c24 =
        extremal_crossing(CrossingQuantity::pair_lambda_zero, Rep::c4, {2, 4}, 8, 1);
    REQUIRE(c24.any_crossing);
    CHECK(std::abs(c24.min_p - (2.0 - kRoot2)) < 1e-6);
    CHECK(c24.max_p - c24.min_p < 1e-9);

    const ExtremalResult f24 =
        extremal_crossing(CrossingQuantity::pair_fidelity_half, Rep::c4, {2, 4}, 8, 1);
    REQUIRE(f24.any_crossing);
    CHECK(std::abs(f24.max_p - (2.0 - kRoot2)) < 1e-6);
    CHECK(f24.max_p - f24.min_p < 1e-9);

    // no crossing anywhere for the (3,4) fidelity on the plain register
    const ExtremalResult f34 =
        extremal_crossing(CrossingQuantity::pair_fidelity_half, Rep::c4, {3, 4}, 8, 1);
    CHECK(!f34.any_crossing);
    CHECK(f34.crossing_points == 0);
    CHECK(f34.evaluated_points >= 64);

    // golden-ratio maximum of the (2,4) ESD on the rotated register
    const ExtremalResult c24h =
        extremal_crossing(CrossingQuantity::pair_lambda_zero, Rep::c4h, {2, 4}, 16, 2);
    REQUIRE(c24h.any_crossing);
    CHECK(std::abs(c24h.max_p - (std::sqrt(5.0) - 1.0) / 2.0) < 5e-3);
}

TEST_CASE("verify suite passes and golden rows regenerate") {
    const VerifyReport report = verify_suite(25, 12345, "");
    CHECK(report.all_pass);
    CHECK(report.checks.size() == forms::registry().size());
    for (const VerifyCheck& check : report.checks) CHECK(check.max_dev <= 1e-8);

    const std::string path = "test_golden_tmp.csv";
    const int rows = write_golden(path, 3, 42);
    CHECK(rows == static_cast<int>(3 * forms::registry().size()));
    const VerifyReport with_golden = verify_suite(5, 1, path);
    CHECK(with_golden.all_pass);
    CHECK(with_golden.checks.size() == forms::registry().size() + 1);
    CHECK(with_golden.checks.back().max_dev <= 1e-9);
    std::remove(path.c_str());
}

TEST_CASE("table report structure at a coarse angle grid") {
    const Table1Report report = table1_report(1e-3, 5e-3, 4);
    CHECK(report.cells.size() == 28);
    CHECK(report.angle_points == 4);
    int block1 = 0;
    for (const TableCell& cell : report.cells) {
        CHECK(!cell.expected.empty());
        CHECK(!cell.computed.empty());
        if (cell.quantity[0] == 'W' || cell.quantity[0] == 'N') ++block1;
    }
    CHECK(block1 == 10);
    // the coarse grid resolves every threshold cell
    for (const TableCell& cell : report.cells)
        if (cell.quantity[0] == 'W' || cell.quantity[0] == 'N') CHECK(cell.pass);
    const std::string text = format_table1(report);
    CHECK(text.find("W    c4   expected 0.586") != std::string::npos);
    CHECK(text.find("convention") != std::string::npos);
}
