#pragma once

#include <functional>
#include <optional>
#include <string>

#include "cdsim/closed_forms.hpp"
#include "cdsim/pipeline.hpp"

namespace cdsim {

inline const char* tool_version() { return "cdsim 1.0.0"; }

// ---- metrics addressable from sweeps and the CLI ---------------------------

enum class MetricKind {
    negativity_cut,
    witness,
    purity,
    rotation_fidelity,
    pair_fidelity,
    pair_lambda,
};

struct MetricSpec {
    MetricKind kind = MetricKind::witness;
    std::string name;       // canonical name
    std::vector<int> cut;   // 0-based qubits, for negativity_cut
    PairSpec pair;          // for pair metrics
};

// Accepts n1, n12, n13, n14, witness, purity, f_rotation, f_pair34 (etc.),
// c_pair34 (etc.); case and "()," punctuation are ignored.
MetricSpec parse_metric(const std::string& name);
// 1-based angle slots the metric reads (empty for angle-independent ones).
std::vector<int> metric_angle_slots(const MetricSpec& metric);

// Evaluate a metric on a prepared register.  `dephased` is the noisy state;
// `reference` is the p = 0 state with the same mixing weight, used as the
// fidelity baseline.  theta holds the four angle slots.
double eval_metric(const MetricSpec& metric, Rep rep, const DensityState& dephased,
                   const DensityState& reference, const std::array<double, 4>& theta);

// ---- sweeps -----------------------------------------------------------------

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<std::string> metric_names;
    // One row per grid point, index order (last axis fastest): axis values
    // then metric values.
    std::vector<std::vector<double>> records;
    std::vector<std::pair<std::string, std::string>> metadata;
};

struct SweepConfig {
    Rep rep = Rep::c4;
    std::vector<std::string> metrics;
    std::vector<double> p_values;                    // "p" axis when non-empty
    std::optional<DephasingProfile> fixed_profile;   // alternative to a p axis
    std::array<std::vector<double>, 4> theta_values; // per-slot axis when non-empty
    std::array<double, 4> theta_fixed = {0.0, 0.0, 0.0, 0.0};
    double q = 1.0;
};

SweepResult sweep(const SweepConfig& config);

// ---- root finding ------------------------------------------------------------

struct ThresholdReport {
    std::string quantity;
    double lo = 0.0;
    double hi = 0.0;
    std::optional<double> root;  // nullopt = none in the bracket
    std::string method;          // "bisection" or "grid+refine"
    double tolerance = 0.0;
};

// Classic sign-change bisection; requires f(lo) * f(hi) <= 0.
double find_threshold(const std::function<double(double)>& f, double lo, double hi,
                      double tol = 1e-12);

// First p where g dips below -1e-10, located by a grid scan plus bisection
// onto that level; nullopt when g stays above it (grazing zeros do not
// count as crossings).
std::optional<double> first_crossing(const std::function<double(double)>& g, double lo, double hi,
                                     int grid_points, double tol = 1e-12);

// Upper boundary of {p : g(p) < -1e-10}; nullopt when g is still below the
// level at hi (i.e. no transition inside the bracket).
std::optional<double> negative_support_end(const std::function<double(double)>& g, double lo,
                                           double hi);

// Threshold of a named quantity for a dephased register at fixed angles:
// fidelity-type quantities cross 1/2, all others cross zero.
ThresholdReport threshold_report(const std::string& quantity, Rep rep,
                                 const std::array<double, 4>& theta, double tol = 1e-12,
                                 double lo = 0.0, double hi = 1.0 - 1e-6);

// ---- angle-extremal crossings --------------------------------------------------

enum class CrossingQuantity { pair_fidelity_half, pair_lambda_zero, rotation_fidelity_half };

struct ExtremalResult {
    bool any_crossing = false;
    double min_p = 0.0;
    double max_p = 0.0;
    std::array<double, 4> argmin{};  // angle slots at the extreme crossings
    std::array<double, 4> argmax{};
    long evaluated_points = 0;
    long crossing_points = 0;
};

// Scan a uniform angle grid (angle_points per angle), locate the crossing in
// p at every point, then refine around both extremes with `refine_levels`
// rounds of 8x finer local grids.
ExtremalResult extremal_crossing(CrossingQuantity quantity, Rep rep, PairSpec pair,
                                 int angle_points = 64, int refine_levels = 3,
                                 double tol = 1e-12);

// ---- PPT patterns ---------------------------------------------------------------

struct PptPattern {
    // cuts {0}, {0,1}, {0,2}, {0,3} in that order
    std::array<bool, 4> npt{};
    bool bound_flag = false;  // some cuts NPT while others are PPT
};

PptPattern ppt_pattern(const DensityState& state);
const std::array<std::vector<int>, 4>& ppt_cuts();
std::string ppt_cut_label(int index);
// Per-cut boundary p of the NPT region for the dephased resource state;
// nullopt when the cut stays NPT through 1 - 1e-6.
std::array<std::optional<double>, 4> ppt_transitions(Rep rep);

// ---- threshold table -------------------------------------------------------------

struct TableCell {
    std::string quantity;  // W, N1, N12, N13, N14, C34, ..., F34, ..., Fr
    Rep rep = Rep::c4;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct Table1Report {
    std::vector<TableCell> cells;
    bool all_pass = false;
    int angle_points = 64;
    std::string convention;
};

Table1Report table1_report(double tol_bisect = 1e-3, double tol_extremal = 5e-3,
                           int angle_points = 64);
std::string format_table1(const Table1Report& report);

// ---- closed-form verification ------------------------------------------------------

struct VerifyCheck {
    std::string name;
    double max_dev = 0.0;
    double tolerance = 0.0;
    long samples = 0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = false;
    std::string convention;
};

// Pins every closed form to the numeric pipeline on the deterministic
// p x angle grid plus `random_samples` randomized samples, and, when
// golden_path is non-empty, recomputes every golden row (tolerance 1e-9).
VerifyReport verify_suite(int random_samples = 240, unsigned seed = 20260814,
                          const std::string& golden_path = "");
std::string format_verify(const VerifyReport& report);

// Regenerate the golden rows from the closed forms; returns the row count.
int write_golden(const std::string& path, int rows_per_form = 20, unsigned seed = 99);

}  // namespace cdsim
