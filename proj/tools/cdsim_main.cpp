#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdsim/analysis.hpp"
#include "cdsim/sweep_io.hpp"

namespace {

// "lo:hi:n" -> n uniformly spaced values
std::vector<double> parse_grid(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    long n = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &n, &extra) != 3 || n < 1)
        throw CLI::ValidationError("grid", "expected lo:hi:n with n >= 1, got '" + text + "'");
    std::vector<double> values;
    if (n == 1) {
        values.push_back(lo);
        return values;
    }
    for (long i = 0; i < n; ++i) values.push_back(lo + (hi - lo) * i / (n - 1));
    return values;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size()) throw CLI::ValidationError("list", "bad number '" + item + "'");
    }
    return values;
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    cdsim::write_text_file(out_path, payload);
}

std::string format_threshold(const cdsim::ThresholdReport& report, cdsim::Rep rep) {
    std::ostringstream out;
    out << "threshold report\n";
    out << "  quantity        " << report.quantity << "\n";
    out << "  representation  " << cdsim::rep_name(rep) << "\n";
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  bracket         [%g, %.17g]\n", report.lo, report.hi);
    out << buf;
    out << "  method          " << report.method << "\n";
    std::snprintf(buf, sizeof(buf), "  tolerance       %g\n", report.tolerance);
    out << buf;
    if (report.root) {
        std::snprintf(buf, sizeof(buf), "  root            %.12f\n", *report.root);
        out << buf;
    } else {
        out << "  root            none\n";
    }
    out << "  convention      " << cdsim::measurement_convention() << "\n";
    return out.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-qubit cluster-state dephasing analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cdsim::tool_version());
    app.set_config("--config", "",
                   "INI config file; subcommand options go in [sweep]-style sections");

    // ---- sweep ----
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate metrics over parameter grids");
    sweep_cmd->fallthrough();
    std::string sw_rep = "c4";
    std::vector<std::string> sw_metrics;
    std::string sw_p_grid, sw_profile, sw_schedule, sw_out, sw_format = "csv";
    std::array<std::string, 4> sw_theta_grid;
    std::array<double, 4> sw_theta_fixed = {0.0, 0.0, 0.0, 0.0};
    double sw_p = -1.0, sw_kappa = -1.0, sw_tau = -1.0, sw_q = 1.0;
    sweep_cmd->add_option("--rep", sw_rep, "representation: c4 or c4h")
        ->check(CLI::IsMember({"c4", "c4h"}));
    sweep_cmd->add_option("--metric", sw_metrics, "metric name (repeatable)")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--p-grid", sw_p_grid, "uniform dephasing axis, lo:hi:n");
    auto* opt_p = sweep_cmd->add_option("--p", sw_p, "fixed uniform dephasing strength");
    sweep_cmd->add_option("--profile", sw_profile, "fixed per-qubit strengths p1,p2,p3,p4");
    auto* opt_kappa = sweep_cmd->add_option("--kappa", sw_kappa, "dephasing rate");
    auto* opt_tau = sweep_cmd->add_option("--tau", sw_tau, "exposure time");
    opt_kappa->needs(opt_tau);
    opt_tau->needs(opt_kappa);
    sweep_cmd->add_option("--schedule", sw_schedule,
                          "per-qubit strengths base:dp:k1,k2,k3,k4 (p_i = base + k_i*dp)");
    sweep_cmd->add_option("--q", sw_q, "cluster fraction of the initial mixture (default 1)");
    for (int s = 1; s <= 4; ++s) {
        sweep_cmd->add_option("--theta" + std::to_string(s) + "-grid", sw_theta_grid[s - 1],
                              "angle axis for slot " + std::to_string(s) + ", lo:hi:n");
        sweep_cmd->add_option("--theta" + std::to_string(s), sw_theta_fixed[s - 1],
                              "fixed angle for slot " + std::to_string(s));
    }
    sweep_cmd->add_option("--out", sw_out, "output path (default stdout)");
    sweep_cmd->add_option("--format", sw_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- threshold ----
    CLI::App* thr_cmd = app.add_subcommand("threshold", "locate where a quantity changes regime");
    thr_cmd->fallthrough();
    std::string th_quantity, th_rep = "c4", th_angles;
    double th_tol = 1e-12;
    thr_cmd->add_option("--quantity", th_quantity, "metric name, e.g. witness, n13, f_pair24")
        ->required();
    thr_cmd->add_option("--rep", th_rep, "representation: c4 or c4h")
        ->check(CLI::IsMember({"c4", "c4h"}));
    thr_cmd->add_option("--angles", th_angles, "fixed angles t1,t2,t3,t4 (default zeros)");
    thr_cmd->add_option("--tol", th_tol, "bisection tolerance (>= 1e-12)");

    // ---- table1 ----
    CLI::App* tab_cmd =
        app.add_subcommand("table1", "compute the full threshold table and compare to references");
    tab_cmd->fallthrough();
    std::string tab_out;
    double tab_tol_bisect = 1e-3, tab_tol_extremal = 5e-3;
    int tab_angle_points = 64;
    tab_cmd->add_option("--out", tab_out, "output path (default stdout)");
    tab_cmd->add_option("--tol-bisect", tab_tol_bisect, "tolerance for single-threshold cells");
    tab_cmd->add_option("--tol-extremal", tab_tol_extremal, "tolerance for angle-extremal cells");
    tab_cmd->add_option("--angle-points", tab_angle_points, "base angle grid density per axis");

    // ---- verify ----
    CLI::App* ver_cmd =
        app.add_subcommand("verify", "pin every closed form against the numeric pipeline");
    ver_cmd->fallthrough();
    std::string ver_golden, ver_write;
    int ver_samples = 240;
    unsigned ver_seed = 20260814;
    auto* opt_golden =
        ver_cmd->add_option("--golden", ver_golden, "golden rows to recompute (csv)");
    ver_cmd->add_option("--samples", ver_samples, "randomized samples per form");
    ver_cmd->add_option("--seed", ver_seed, "seed for the randomized samples");
    ver_cmd->add_option("--write-golden", ver_write, "regenerate golden rows at this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sweep_cmd) {
            cdsim::SweepConfig config;
            config.rep = cdsim::rep_from_name(sw_rep);
            config.metrics = sw_metrics;
            config.q = sw_q;
            int sources = 0;
            if (!sw_p_grid.empty()) {
                config.p_values = parse_grid(sw_p_grid);
                ++sources;
            }
            if (opt_p->count() > 0) {
                config.fixed_profile = cdsim::DephasingProfile::uniform(sw_p);
                ++sources;
            }
            if (!sw_profile.empty()) {
                config.fixed_profile =
                    cdsim::DephasingProfile::per_qubit(parse_csv_doubles(sw_profile));
                ++sources;
            }
            if (opt_kappa->count() > 0) {
                config.fixed_profile = cdsim::DephasingProfile::from_rate(sw_kappa, sw_tau);
                ++sources;
            }
            if (!sw_schedule.empty()) {
                double base = 0.0, dp = 0.0;
                char sep = 0;
                std::stringstream stream(sw_schedule);
                std::string head, mult;
                if (!std::getline(stream, head, ':') || std::sscanf(head.c_str(), "%lf%c", &base, &sep) != 1 ||
                    !std::getline(stream, head, ':') || std::sscanf(head.c_str(), "%lf%c", &dp, &sep) != 1 ||
                    !std::getline(stream, mult))
                    throw std::invalid_argument("--schedule expects base:dp:k1,k2,k3,k4");
                std::vector<int> multipliers;
                for (double k : parse_csv_doubles(mult))
                    multipliers.push_back(static_cast<int>(std::lround(k)));
                config.fixed_profile =
                    cdsim::DephasingProfile::from_schedule(base, dp, multipliers);
                ++sources;
            }
            if (sources != 1)
                throw std::invalid_argument(
                    "give exactly one of --p-grid, --p, --profile, --kappa/--tau, --schedule");
            for (int s = 0; s < 4; ++s) {
                if (!sw_theta_grid[s].empty()) config.theta_values[s] = parse_grid(sw_theta_grid[s]);
                config.theta_fixed[s] = sw_theta_fixed[s];
            }
            const cdsim::SweepResult result = cdsim::sweep(config);
            write_output(sw_out, sw_format == "json" ? cdsim::emit_json(result)
                                                     : cdsim::emit_csv(result));
            return 0;
        }

        if (*thr_cmd) {
            std::array<double, 4> theta = {0.0, 0.0, 0.0, 0.0};
            if (!th_angles.empty()) {
                const std::vector<double> values = parse_csv_doubles(th_angles);
                if (values.size() > 4) throw std::invalid_argument("--angles takes at most 4 values");
                for (std::size_t i = 0; i < values.size(); ++i) theta[i] = values[i];
            }
            const cdsim::Rep rep = cdsim::rep_from_name(th_rep);
            const cdsim::ThresholdReport report =
                cdsim::threshold_report(th_quantity, rep, theta, th_tol);
            std::cout << format_threshold(report, rep);
            return 0;
        }

        if (*tab_cmd) {
            const cdsim::Table1Report report =
                cdsim::table1_report(tab_tol_bisect, tab_tol_extremal, tab_angle_points);
            write_output(tab_out, cdsim::format_table1(report));
            return report.all_pass ? 0 : 2;
        }

        if (*ver_cmd) {
            if (!ver_write.empty()) {
                const int rows = cdsim::write_golden(ver_write);
                std::cout << "wrote " << rows << " golden rows to " << ver_write << "\n";
                return 0;
            }
            std::string golden = ver_golden;
            if (opt_golden->count() == 0) {
                // default location when run from the repository root
                golden = file_exists("data/golden_forms.csv") ? "data/golden_forms.csv" : "";
            }
            const cdsim::VerifyReport report = cdsim::verify_suite(ver_samples, ver_seed, golden);
            std::cout << format_verify(report);
            return report.all_pass ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
