#include "cdsim/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cdsim/sweep_io.hpp"

namespace cdsim {

namespace {

constexpr double kGuard = 1e-10;   // a crossing must actually go below -guard
constexpr double kHiP = 1.0 - 1e-6;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string canon_metric(const std::string& name) {
    std::string out;
    for (char ch : name) {
        if (ch == '(' || ch == ')' || ch == ',' || ch == ' ') continue;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    return out;
}

}  // namespace

MetricSpec parse_metric(const std::string& name) {
    const std::string c = canon_metric(name);
    MetricSpec m;
    m.name = c;
    if (c == "witness") {
        m.kind = MetricKind::witness;
    } else if (c == "purity") {
        m.kind = MetricKind::purity;
    } else if (c == "n1") {
        m.kind = MetricKind::negativity_cut;
        m.cut = {0};
    } else if (c == "n12") {
        m.kind = MetricKind::negativity_cut;
        m.cut = {0, 1};
    } else if (c == "n13") {
        m.kind = MetricKind::negativity_cut;
        m.cut = {0, 2};
    } else if (c == "n14") {
        m.kind = MetricKind::negativity_cut;
        m.cut = {0, 3};
    } else if (c == "f_rotation") {
        m.kind = MetricKind::rotation_fidelity;
    } else if (c.rfind("f_pair", 0) == 0) {
        m.kind = MetricKind::pair_fidelity;
        m.pair = pair_from_label(c.substr(6));
    } else if (c.rfind("c_pair", 0) == 0) {
        m.kind = MetricKind::pair_lambda;
        m.pair = pair_from_label(c.substr(6));
    } else {
        throw std::invalid_argument("unknown metric: " + name);
    }
    return m;
}

std::vector<int> metric_angle_slots(const MetricSpec& metric) {
    switch (metric.kind) {
        case MetricKind::rotation_fidelity:
            return {1, 2, 3};
        case MetricKind::pair_fidelity:
        case MetricKind::pair_lambda: {
            const PairRoute route = pair_route(metric.pair);
            return {route.angle_slots[0], route.angle_slots[1]};
        }
        default:
            return {};
    }
}

double eval_metric(const MetricSpec& metric, Rep rep, const DensityState& dephased,
                   const DensityState& reference, const std::array<double, 4>& theta) {
    switch (metric.kind) {
        case MetricKind::witness:
            return witness_expectation(dephased, rep);
        case MetricKind::purity:
            return purity(dephased);
        case MetricKind::negativity_cut:
            return pt_min_eigenvalue(dephased, metric.cut);
        case MetricKind::rotation_fidelity: {
            const auto steps = rotation_steps(theta[0], theta[1], theta[2]);
            return state_overlap(measure_postselect(dephased, steps).state,
                                 measure_postselect(reference, steps).state);
        }
        case MetricKind::pair_fidelity:
        case MetricKind::pair_lambda: {
            const PairRoute route = pair_route(metric.pair);
            const auto steps = pair_steps(metric.pair, theta[route.angle_slots[0] - 1],
                                          theta[route.angle_slots[1] - 1]);
            const DensityState out = measure_postselect(dephased, steps).state;
            if (metric.kind == MetricKind::pair_lambda) return concurrence_lambda(out);
            return state_overlap(out, measure_postselect(reference, steps).state);
        }
    }
    throw std::logic_error("unhandled metric kind");
}

// ---- sweep -------------------------------------------------------------------

SweepResult sweep(const SweepConfig& config) {
    if (config.metrics.empty()) throw std::invalid_argument("no metrics requested");
    if (!(config.q >= 0.0 && config.q <= 1.0))
        throw std::invalid_argument("mixing weight must lie in [0, 1]");
    if (!config.p_values.empty() && config.fixed_profile)
        throw std::invalid_argument("give either a p grid or a fixed profile, not both");
    if (config.p_values.empty() && !config.fixed_profile)
        throw std::invalid_argument("need a p grid or a fixed profile");
    for (double p : config.p_values)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p grid values must lie in [0, 1]");

    std::vector<MetricSpec> specs;
    std::vector<int> slots_needed;
    for (const std::string& name : config.metrics) {
        MetricSpec spec = parse_metric(name);
        for (const MetricSpec& other : specs)
            if (other.name == spec.name) throw std::invalid_argument("duplicate metric: " + name);
        for (int s : metric_angle_slots(spec))
            if (std::find(slots_needed.begin(), slots_needed.end(), s) == slots_needed.end())
                slots_needed.push_back(s);
        specs.push_back(std::move(spec));
    }
    std::sort(slots_needed.begin(), slots_needed.end());
    for (int slot = 1; slot <= 4; ++slot) {
        const bool needed =
            std::find(slots_needed.begin(), slots_needed.end(), slot) != slots_needed.end();
        if (!config.theta_values[slot - 1].empty() && !needed)
            throw std::invalid_argument("angle grid given for slot theta" + std::to_string(slot) +
                                        " which no requested metric reads");
    }

    SweepResult result;
    const bool p_axis = !config.p_values.empty();
    if (p_axis) result.axes.push_back({"p", config.p_values});
    for (int slot : slots_needed)
        if (!config.theta_values[slot - 1].empty())
            result.axes.push_back({"theta" + std::to_string(slot), config.theta_values[slot - 1]});
    for (const MetricSpec& spec : specs) result.metric_names.push_back(spec.name);

    result.metadata.push_back({"representation", rep_name(config.rep)});
    if (config.fixed_profile) {
        std::string prof;
        for (double v : config.fixed_profile->p) prof += (prof.empty() ? "" : ",") + fmt(v);
        result.metadata.push_back({"profile", prof});
    } else {
        result.metadata.push_back({"profile", "uniform(p)"});
    }
    result.metadata.push_back({"q", fmt(config.q)});
    for (int slot : slots_needed)
        if (config.theta_values[slot - 1].empty())
            result.metadata.push_back(
                {"theta" + std::to_string(slot), fmt(config.theta_fixed[slot - 1])});
    result.metadata.push_back({"convention", measurement_convention()});
    result.metadata.push_back({"tool", tool_version()});

    std::size_t n_records = 1;
    for (const SweepAxis& ax : result.axes) {
        if (ax.values.empty()) throw std::invalid_argument("empty grid for axis " + ax.name);
        n_records *= ax.values.size();
    }

    const DensityState reference = dephased_cluster(config.rep, 0.0, config.q);
    DensityState state;
    double cached_p = std::numeric_limits<double>::quiet_NaN();
    if (config.fixed_profile)
        state = dephased_cluster(config.rep, *config.fixed_profile, config.q);

    std::vector<std::size_t> idx(result.axes.size(), 0);
    for (std::size_t r = 0; r < n_records; ++r) {
        std::array<double, 4> theta = config.theta_fixed;
        std::vector<double> row;
        for (std::size_t a = 0; a < result.axes.size(); ++a) {
            const double v = result.axes[a].values[idx[a]];
            row.push_back(v);
            if (result.axes[a].name == "p") {
                if (v != cached_p) {
                    state = dephased_cluster(config.rep, v, config.q);
                    cached_p = v;
                }
            } else {
                theta[result.axes[a].name[5] - '1'] = v;
            }
        }
        for (const MetricSpec& spec : specs)
            row.push_back(eval_metric(spec, config.rep, state, reference, theta));
        result.records.push_back(std::move(row));

        for (std::size_t a = result.axes.size(); a-- > 0;) {
            if (++idx[a] < result.axes[a].values.size()) break;
            idx[a] = 0;
        }
    }
    return result;
}

// ---- root finding --------------------------------------------------------------

double find_threshold(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (tol < 1e-12) throw std::invalid_argument("tolerance below 1e-12");
    if (!(lo < hi)) throw std::invalid_argument("empty bracket");
    double fa = f(lo);
    double fb = f(hi);
    if (fa == 0.0) return lo;
    if (fb == 0.0) return hi;
    if (fa * fb > 0.0) throw std::invalid_argument("no sign change in bracket");
    double a = lo, b = hi;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fa * fm < 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

std::optional<double> first_crossing(const std::function<double(double)>& g, double lo, double hi,
                                     int grid_points, double tol) {
    if (grid_points < 2) throw std::invalid_argument("need at least two grid points");
    double prev_x = lo;
    double prev_g = g(lo);
    if (prev_g < -kGuard) return lo;
    for (int i = 1; i < grid_points; ++i) {
        const double x = lo + (hi - lo) * i / (grid_points - 1);
        const double gx = g(x);
        if (gx < -kGuard) {
            // bisect onto the guard level
            double a = prev_x, b = x;
            while (b - a > tol) {
                const double mid = 0.5 * (a + b);
                (g(mid) < -kGuard ? b : a) = mid;
            }
            return 0.5 * (a + b);
        }
        prev_x = x;
        prev_g = gx;
    }
    (void)prev_g;
    return std::nullopt;
}

std::optional<double> negative_support_end(const std::function<double(double)>& g, double lo,
                                           double hi) {
    if (g(hi) < -kGuard) return std::nullopt;  // still negative at the end of the bracket
    if (!(g(lo) < -kGuard)) return lo;
    double a = lo, b = hi;
    for (int it = 0; it < 100 && b - a > 1e-13; ++it) {
        const double mid = 0.5 * (a + b);
        (g(mid) < -kGuard ? a : b) = mid;
    }
    return 0.5 * (a + b);
}

ThresholdReport threshold_report(const std::string& quantity, Rep rep,
                                 const std::array<double, 4>& theta, double tol, double lo,
                                 double hi) {
    const MetricSpec spec = parse_metric(quantity);
    if (spec.kind == MetricKind::purity)
        throw std::invalid_argument("purity has no threshold semantics");
    const DensityState reference = dephased_cluster(rep, 0.0);
    const bool fidelity = spec.kind == MetricKind::rotation_fidelity ||
                          spec.kind == MetricKind::pair_fidelity;
    auto g = [&](double p) {
        const DensityState state = dephased_cluster(rep, p);
        const double v = eval_metric(spec, rep, state, reference, theta);
        return fidelity ? v - 0.5 : v;
    };

    ThresholdReport report;
    report.quantity = spec.name;
    report.lo = lo;
    report.hi = hi;
    if (spec.kind == MetricKind::witness || spec.kind == MetricKind::negativity_cut) {
        report.method = "grid+refine";
        report.tolerance = 1e-13;
        report.root = negative_support_end(g, lo, hi);
    } else {
        report.method = "bisection";
        report.tolerance = tol;
        report.root = first_crossing(g, lo, hi, 1024, tol);
    }
    return report;
}

// ---- angle-extremal crossings -----------------------------------------------------

namespace {

// Dephasing-strength nodes for the concurrence scans; the quantity has no
// polynomial structure, so it is sampled and then bisected.
const std::vector<double>& lambda_nodes() {
    static const std::vector<double> nodes = [] {
        std::vector<double> v;
        for (int i = 0; i <= 40; ++i) v.push_back(kHiP * i / 40.0);
        return v;
    }();
    return nodes;
}

// Real roots of c0 + c1 x + c2 x^2 + c3 x^3 (Cardano / trigonometric form),
// degrading gracefully to the quadratic and linear cases.
std::vector<double> real_cubic_roots(double c0, double c1, double c2, double c3) {
    std::vector<double> roots;
    const double scale = std::abs(c0) + std::abs(c1) + std::abs(c2) + 1.0;
    if (std::abs(c3) < 1e-14 * scale) {
        if (std::abs(c2) < 1e-14 * (std::abs(c0) + std::abs(c1) + 1.0)) {
            if (c1 != 0.0) roots.push_back(-c0 / c1);
            return roots;
        }
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            roots.push_back((-c1 + s) / (2.0 * c2));
            roots.push_back((-c1 - s) / (2.0 * c2));
        }
        return roots;
    }
    const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
    const double p = b - a * a / 3.0;  // depressed cubic t^3 + p t + q, x = t - a/3
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + shift);
    } else if (p == 0.0) {
        roots.push_back(std::cbrt(-q) + shift);
    } else {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double phi = std::acos(std::clamp(-4.0 * q / (m * m * m), -1.0, 1.0));
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos((phi + kTwoPi * k) / 3.0) + shift);
    }
    return roots;
}

// Per-angle-point crossing solver built on the u = sqrt(1-p) polynomial
// decomposition of the unnormalized measured output.
class PointSolver {
  public:
    PointSolver(const DensityState& base, const std::vector<MeasurementStep>& steps,
                bool fidelity)
        : fidelity_(fidelity) {
        detail::MeasurementKernel kernel(base, steps);
        kept_dim_ = kernel.kept_dim();
        coeff_ = kernel.power_coefficients();
        for (int c = 0; c < 5; ++c) denom_[c] = trace(coeff_[c]).real();
        if (fidelity_) {
            ComplexMatrix ref(kept_dim_, kept_dim_);
            double p0 = 0.0;
            for (int c = 0; c < 5; ++c) p0 += denom_[c];
            if (p0 < 1e-12) throw std::runtime_error("reference branch probability vanishes");
            for (int c = 0; c < 5; ++c)
                for (int i = 0; i < kept_dim_; ++i)
                    for (int j = 0; j < kept_dim_; ++j) ref.at(i, j) += coeff_[c].at(i, j);
            for (int c = 0; c < 5; ++c) {
                cplx tr(0.0, 0.0);
                for (int i = 0; i < kept_dim_; ++i)
                    for (int j = 0; j < kept_dim_; ++j)
                        tr += coeff_[c].at(i, j) * std::conj(ref.at(i, j));
                // Tr[A ref^dagger] with ref Hermitian equals Tr[A ref]
                numer_[c] = tr.real() / p0;
            }
        }
    }

    // F(p) - 1/2, exact rational function of u.
    double fidelity_gap(double u) const {
        double n = 0.0, d = 0.0, uc = 1.0;
        for (int c = 0; c < 5; ++c) {
            n += numer_[c] * uc;
            d += denom_[c] * uc;
            uc *= u;
        }
        return n / d - 0.5;
    }

    double lambda(double u) const {
        double d = 0.0, uc = 1.0;
        ComplexMatrix out(kept_dim_, kept_dim_);
        for (int c = 0; c < 5; ++c) {
            for (int i = 0; i < kept_dim_; ++i)
                for (int j = 0; j < kept_dim_; ++j) out.at(i, j) += uc * coeff_[c].at(i, j);
            d += denom_[c] * uc;
            uc *= u;
        }
        if (d < 1e-12) throw std::runtime_error("branch probability vanishes");
        const cplx scale(1.0 / d, 0.0);
        for (cplx& z : out.data()) z *= scale;
        int kept_qubits = 0;
        while ((1 << kept_qubits) < kept_dim_) ++kept_qubits;
        return concurrence_lambda(DensityState{kept_qubits, std::move(out)});
    }

    double value(double p) const {
        const double u = std::sqrt(1.0 - p);
        return fidelity_ ? fidelity_gap(u) : lambda(u);
    }

    // Smallest p in [0, kHiP] where the quantity drops below -guard.
    // `alive` reports whether the point participates at all (for lambda:
    // entangled at p = 0).
    std::optional<double> crossing(bool& alive) const {
        alive = true;
        if (fidelity_) {
            // The gap sits below -guard exactly where the quartic
            // Q(u) = sum_c (numer_c - (1/2 - guard) denom_c) u^c is negative
            // (the denominator is a positive branch probability).  Q is
            // monotone between its stationary points, so evaluating it there
            // brackets every root exactly.
            std::array<double, 5> qc;
            for (int c = 0; c < 5; ++c) qc[c] = numer_[c] - (0.5 - kGuard) * denom_[c];
            auto q_at = [&qc](double u) {
                double acc = 0.0, uc = 1.0;
                for (int c = 0; c < 5; ++c) {
                    acc += qc[c] * uc;
                    uc *= u;
                }
                return acc;
            };
            const double u_lo = std::sqrt(1.0 - kHiP);
            std::vector<double> nodes =
                real_cubic_roots(qc[1], 2.0 * qc[2], 3.0 * qc[3], 4.0 * qc[4]);
            nodes.erase(std::remove_if(nodes.begin(), nodes.end(),
                                       [&](double u) { return !(u > u_lo && u < 1.0); }),
                        nodes.end());
            nodes.push_back(u_lo);
            nodes.push_back(1.0);
            std::sort(nodes.rbegin(), nodes.rend());
            // Q(1) > 0 because the p = 0 fidelity is 1; walking down in u, the
            // first negative node brackets the largest root = earliest p.
            for (std::size_t i = 1; i < nodes.size(); ++i) {
                if (q_at(nodes[i]) < 0.0) {
                    double hi = nodes[i - 1], lo = nodes[i];
                    while (hi - lo > 1e-14) {
                        const double mid = 0.5 * (hi + lo);
                        (q_at(mid) < 0.0 ? lo : hi) = mid;
                    }
                    const double u_star = 0.5 * (hi + lo);
                    return 1.0 - u_star * u_star;
                }
            }
            return std::nullopt;
        }
        const std::vector<double>& nodes = lambda_nodes();
        if (lambda(1.0) <= 1e-6) {
            alive = false;
            return std::nullopt;
        }
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            if (value(nodes[i]) < -kGuard) return bisect(nodes[i - 1], nodes[i]);
        }
        return std::nullopt;
    }

  private:
    double bisect(double a, double b) const {
        while (b - a > 1e-12) {
            const double mid = 0.5 * (a + b);
            (value(mid) < -kGuard ? b : a) = mid;
        }
        return 0.5 * (a + b);
    }

    bool fidelity_;
    int kept_dim_ = 0;
    std::array<ComplexMatrix, 5> coeff_;
    std::array<double, 5> numer_{};
    std::array<double, 5> denom_{};
};

}  // namespace

ExtremalResult extremal_crossing(CrossingQuantity quantity, Rep rep, PairSpec pair,
                                 int angle_points, int refine_levels, double tol) {
    (void)tol;
    if (angle_points < 2) throw std::invalid_argument("need at least two angle points");
    const bool rotation = quantity == CrossingQuantity::rotation_fidelity_half;
    const bool fidelity = quantity != CrossingQuantity::pair_lambda_zero;
    const int dims = rotation ? 3 : 2;

    std::vector<int> slots;  // 1-based angle slots being scanned
    if (rotation) {
        slots = {1, 2, 3};
    } else {
        const PairRoute route = pair_route(pair);
        slots = {route.angle_slots[0], route.angle_slots[1]};
    }
    const DensityState base = cluster_state(rep);

    ExtremalResult result;
    auto probe = [&](const std::vector<double>& angles) {
        std::array<double, 4> theta{};
        for (int d = 0; d < dims; ++d) theta[slots[d] - 1] = angles[d];
        const std::vector<MeasurementStep> steps =
            rotation ? rotation_steps(theta[0], theta[1], theta[2])
                     : pair_steps(pair, theta[slots[0] - 1], theta[slots[1] - 1]);
        PointSolver solver(base, steps, fidelity);
        bool alive = true;
        const std::optional<double> cross = solver.crossing(alive);
        ++result.evaluated_points;
        if (!cross) return;
        ++result.crossing_points;
        if (!result.any_crossing || *cross < result.min_p) {
            result.min_p = *cross;
            result.argmin = theta;
        }
        if (!result.any_crossing || *cross > result.max_p) {
            result.max_p = *cross;
            result.argmax = theta;
        }
        result.any_crossing = true;
    };

    // base grid
    std::vector<double> angles(dims, 0.0);
    std::vector<int> idx(dims, 0);
    const double h0 = kTwoPi / angle_points;
    while (true) {
        for (int d = 0; d < dims; ++d) angles[d] = idx[d] * h0;
        probe(angles);
        int d = dims - 1;
        while (d >= 0 && ++idx[d] == angle_points) idx[d--] = 0;
        if (d < 0) break;
    }
    if (!result.any_crossing) return result;

    // local refinement around each extreme: window +-h, spacing h/8
    for (bool track_max : {false, true}) {
        double h = h0;
        for (int level = 0; level < refine_levels; ++level) {
            std::vector<double> center(dims);
            const std::array<double, 4>& arg = track_max ? result.argmax : result.argmin;
            for (int d = 0; d < dims; ++d) center[d] = arg[slots[d] - 1];
            std::vector<int> ridx(dims, -8);
            while (true) {
                for (int d = 0; d < dims; ++d) angles[d] = center[d] + ridx[d] * h / 8.0;
                probe(angles);
                int d = dims - 1;
                while (d >= 0 && ++ridx[d] == 9) ridx[d--] = -8;
                if (d < 0) break;
            }
            h /= 8.0;
        }
    }
    return result;
}

// ---- PPT patterns --------------------------------------------------------------

const std::array<std::vector<int>, 4>& ppt_cuts() {
    static const std::array<std::vector<int>, 4> cuts = {
        std::vector<int>{0}, {0, 1}, {0, 2}, {0, 3}};
    return cuts;
}

std::string ppt_cut_label(int index) {
    static const char* labels[4] = {"{0}", "{0,1}", "{0,2}", "{0,3}"};
    return labels[index];
}

PptPattern ppt_pattern(const DensityState& state) {
    if (state.n_qubits != 4) throw std::invalid_argument("PPT pattern needs a four-qubit state");
    PptPattern pattern;
    bool any_npt = false, any_ppt = false;
    for (int i = 0; i < 4; ++i) {
        pattern.npt[i] = pt_min_eigenvalue(state, ppt_cuts()[i]) < -kGuard;
        (pattern.npt[i] ? any_npt : any_ppt) = true;
    }
    pattern.bound_flag = any_npt && any_ppt;
    return pattern;
}

std::array<std::optional<double>, 4> ppt_transitions(Rep rep) {
    std::array<std::optional<double>, 4> out;
    for (int i = 0; i < 4; ++i) {
        auto g = [&](double p) {
            return pt_min_eigenvalue(dephased_cluster(rep, p), ppt_cuts()[i]);
        };
        out[i] = negative_support_end(g, 0.0, kHiP);
    }
    return out;
}

// ---- threshold table -------------------------------------------------------------

namespace {

enum class CellKind { none, bisect, angle_indep, upper, range };

struct CellSpec {
    const char* quantity;
    Rep rep;
    CellKind kind;
    double a = 0.0;
    double b = 0.0;
};

std::string format_expected(const CellSpec& spec) {
    switch (spec.kind) {
        case CellKind::none:
            return "none";
        case CellKind::bisect:
        case CellKind::angle_indep:
            return fmt(spec.a, "%.3f");
        case CellKind::upper:
            return "<= " + fmt(spec.a, "%.3f");
        case CellKind::range:
            return fmt(spec.a, "%.3f") + " <= p <= " + fmt(spec.b, "%.3f");
    }
    return {};
}

}  // namespace

Table1Report table1_report(double tol_bisect, double tol_extremal, int angle_points) {
    // Reference threshold values the computed table is compared against.
    static const std::vector<CellSpec> layout = {
        {"W", Rep::c4, CellKind::bisect, 0.586},
        {"N1", Rep::c4, CellKind::none},
        {"N12", Rep::c4, CellKind::bisect, 0.586},
        {"N13", Rep::c4, CellKind::none},
        {"N14", Rep::c4, CellKind::none},
        {"W", Rep::c4h, CellKind::bisect, 0.535},
        {"N1", Rep::c4h, CellKind::bisect, 0.828},
        {"N12", Rep::c4h, CellKind::bisect, 0.828},
        {"N13", Rep::c4h, CellKind::bisect, 0.938},
        {"N14", Rep::c4h, CellKind::bisect, 0.828},
        {"C34", Rep::c4, CellKind::none},
        {"C24", Rep::c4, CellKind::angle_indep, 0.586},
        {"C23", Rep::c4, CellKind::angle_indep, 0.586},
        {"C14", Rep::c4, CellKind::angle_indep, 0.586},
        {"C34", Rep::c4h, CellKind::upper, 0.704},
        {"C24", Rep::c4h, CellKind::upper, 0.618},
        {"C23", Rep::c4h, CellKind::upper, 0.586},
        {"C14", Rep::c4h, CellKind::range, 0.568, 0.586},
        {"F34", Rep::c4, CellKind::none},
        {"F24", Rep::c4, CellKind::angle_indep, 0.586},
        {"F23", Rep::c4, CellKind::angle_indep, 0.586},
        {"F14", Rep::c4, CellKind::angle_indep, 0.586},
        {"Fr", Rep::c4, CellKind::none},
        {"F34", Rep::c4h, CellKind::range, 0.618, 0.704},
        {"F24", Rep::c4h, CellKind::range, 0.568, 0.828},
        {"F23", Rep::c4h, CellKind::range, 0.586, 0.828},
        {"F14", Rep::c4h, CellKind::range, 0.568, 0.586},
        {"Fr", Rep::c4h, CellKind::none},
    };

    Table1Report report;
    report.angle_points = angle_points;
    report.convention = measurement_convention();
    report.all_pass = true;

    for (const CellSpec& spec : layout) {
        TableCell cell;
        cell.quantity = spec.quantity;
        cell.rep = spec.rep;
        cell.expected = format_expected(spec);

        const std::string q = spec.quantity;
        if (q == "W" || q[0] == 'N') {
            // block 1: single thresholds of the angle-free quantities
            const std::string metric = q == "W" ? "witness" : "n" + q.substr(1);
            const ThresholdReport tr = threshold_report(metric, spec.rep, {0, 0, 0, 0});
            if (tr.root) {
                cell.computed = fmt(*tr.root, "%.6f");
                cell.pass = spec.kind == CellKind::bisect && std::abs(*tr.root - spec.a) <= tol_bisect;
            } else {
                cell.computed = "none";
                cell.pass = spec.kind == CellKind::none;
            }
        } else {
            const CrossingQuantity quantity =
                q == "Fr" ? CrossingQuantity::rotation_fidelity_half
                          : (q[0] == 'C' ? CrossingQuantity::pair_lambda_zero
                                         : CrossingQuantity::pair_fidelity_half);
            PairSpec pair;
            if (q != "Fr") pair = pair_from_label(q.substr(1));
            const ExtremalResult ex = extremal_crossing(quantity, spec.rep, pair, angle_points);
            if (!ex.any_crossing) {
                cell.computed = "none";
                cell.pass = spec.kind == CellKind::none;
            } else {
                cell.computed = "min=" + fmt(ex.min_p, "%.6f") + " max=" + fmt(ex.max_p, "%.6f");
                switch (spec.kind) {
                    case CellKind::none:
                        cell.pass = false;
                        break;
                    case CellKind::angle_indep:
                        cell.pass = std::abs(ex.min_p - spec.a) <= tol_bisect &&
                                    std::abs(ex.max_p - spec.a) <= tol_bisect;
                        break;
                    case CellKind::upper:
                        cell.pass = std::abs(ex.max_p - spec.a) <= tol_extremal;
                        break;
                    case CellKind::range:
                        cell.pass = std::abs(ex.min_p - spec.a) <= tol_extremal &&
                                    std::abs(ex.max_p - spec.b) <= tol_extremal;
                        break;
                    case CellKind::bisect:
                        cell.pass = false;
                        break;
                }
            }
        }
        report.all_pass &= cell.pass;
        report.cells.push_back(std::move(cell));
    }
    return report;
}

std::string format_table1(const Table1Report& report) {
    std::ostringstream out;
    out << "threshold table (angle grid " << report.angle_points << " per axis, convention "
        << report.convention << ")\n";
    const char* block = "";
    for (const TableCell& cell : report.cells) {
        const char* this_block = cell.quantity[0] == 'C'   ? "concurrence ESD extremes"
                                 : cell.quantity[0] == 'F' ? "fidelity 1/2-crossing extremes"
                                                           : "witness/negativity thresholds";
        if (std::string(this_block) != block) {
            block = this_block;
            out << "-- " << block << " --\n";
        }
        char line[160];
        std::snprintf(line, sizeof(line), "%-4s %-4s expected %-26s computed %-28s %s\n",
                      cell.quantity.c_str(), rep_name(cell.rep).c_str(), cell.expected.c_str(),
                      cell.computed.c_str(), cell.pass ? "PASS" : "FAIL");
        out << line;
    }
    out << (report.all_pass ? "table: all cells PASS\n" : "table: some cells FAIL\n");
    return out.str();
}

// ---- closed-form verification -------------------------------------------------------

namespace {

struct Probe {
    Rep rep = Rep::c4;
    enum class T { rotation, pair_f, pair_l, witness, neg_branch } t = T::witness;
    PairSpec pair;
    std::vector<int> cut;
};

Probe probe_for(const std::string& form_name) {
    Probe probe;
    std::string stem = form_name;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == "_c4h") {
        probe.rep = Rep::c4h;
        stem = stem.substr(0, stem.size() - 4);
    } else if (stem.size() > 3 && stem.substr(stem.size() - 3) == "_c4") {
        probe.rep = Rep::c4;
        stem = stem.substr(0, stem.size() - 3);
    } else {
        throw std::invalid_argument("form name has no representation suffix: " + form_name);
    }
    using T = Probe::T;
    if (stem == "f_rotation") {
        probe.t = T::rotation;
    } else if (stem == "witness") {
        probe.t = T::witness;
    } else if (stem == "n1" || stem == "n12" || stem == "n13" || stem == "n14") {
        probe.t = T::neg_branch;
        probe.cut = parse_metric(stem).cut;
    } else if (stem.rfind("f_pair", 0) == 0) {
        probe.t = T::pair_f;
        probe.pair = pair_from_label(stem.substr(6));
    } else if (stem.rfind("c_pair", 0) == 0) {
        probe.t = T::pair_l;
        probe.pair = pair_from_label(stem.substr(6));
    } else {
        throw std::invalid_argument("no numeric probe for form: " + form_name);
    }
    return probe;
}

// |closed form - numeric pipeline| at one sample point.
double probe_deviation(const forms::ClosedForm& form, const Probe& probe, double p,
                       const std::array<double, 4>& theta) {
    const double value = form.eval(p, theta);
    switch (probe.t) {
        case Probe::T::rotation:
            return std::abs(value - rotation_fidelity(probe.rep, p, theta[0], theta[1], theta[2]));
        case Probe::T::pair_f: {
            const PairRoute route = pair_route(probe.pair);
            return std::abs(value - pair_fidelity(probe.rep, p, probe.pair,
                                                  theta[route.angle_slots[0] - 1],
                                                  theta[route.angle_slots[1] - 1]));
        }
        case Probe::T::pair_l: {
            const PairRoute route = pair_route(probe.pair);
            return std::abs(value - pair_lambda(probe.rep, p, probe.pair,
                                                theta[route.angle_slots[0] - 1],
                                                theta[route.angle_slots[1] - 1]));
        }
        case Probe::T::witness:
            return std::abs(value - witness_expectation(dephased_cluster(probe.rep, p), probe.rep));
        case Probe::T::neg_branch: {
            const std::vector<double> eigs =
                pt_eigenvalues(dephased_cluster(probe.rep, p), probe.cut);
            double dev = std::numeric_limits<double>::infinity();
            for (double e : eigs) dev = std::min(dev, std::abs(value - e));
            // where the branch is negative it must be the bottom of the spectrum
            if (value <= -1e-8) dev = std::max(dev, std::abs(value - eigs.front()));
            return dev;
        }
    }
    throw std::logic_error("unhandled probe type");
}

}  // namespace

VerifyReport verify_suite(int random_samples, unsigned seed, const std::string& golden_path) {
    VerifyReport report;
    report.convention = measurement_convention();
    report.all_pass = true;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);

    for (const forms::ClosedForm& form : forms::registry()) {
        const Probe probe = probe_for(form.name);
        VerifyCheck check;
        check.name = form.name;
        check.tolerance = 1e-8;

        // deterministic grid: p in steps of .1, each used angle slot in
        // steps of pi/8
        const int n_slots = static_cast<int>(form.angle_slots.size());
        long n_angle_tuples = 1;
        for (int s = 0; s < n_slots; ++s) n_angle_tuples *= 16;
        const bool measured = probe.t == Probe::T::rotation || probe.t == Probe::T::pair_f ||
                              probe.t == Probe::T::pair_l;
        if (measured && n_slots > 0) {
            // dense angle grids ride the u-polynomial kernel: one contraction
            // per angle tuple serves every p on the grid
            const DensityState base = cluster_state(probe.rep);
            for (long a = 0; a < n_angle_tuples; ++a) {
                std::array<double, 4> theta{};
                long rem = a;
                for (int s = 0; s < n_slots; ++s) {
                    theta[form.angle_slots[s] - 1] = (rem % 16) * (kTwoPi / 16.0);
                    rem /= 16;
                }
                std::vector<MeasurementStep> steps;
                if (probe.t == Probe::T::rotation) {
                    steps = rotation_steps(theta[0], theta[1], theta[2]);
                } else {
                    const PairRoute route = pair_route(probe.pair);
                    steps = pair_steps(probe.pair, theta[route.angle_slots[0] - 1],
                                       theta[route.angle_slots[1] - 1]);
                }
                const PointSolver solver(base, steps, probe.t != Probe::T::pair_l);
                for (int ip = 0; ip <= 10; ++ip) {
                    const double p = ip / 10.0;
                    const double u = std::sqrt(1.0 - p);
                    const double numeric = probe.t == Probe::T::pair_l
                                               ? solver.lambda(u)
                                               : solver.fidelity_gap(u) + 0.5;
                    check.max_dev =
                        std::max(check.max_dev, std::abs(form.eval(p, theta) - numeric));
                    ++check.samples;
                }
            }
        } else {
            for (int ip = 0; ip <= 10; ++ip) {
                const double p = ip / 10.0;
                for (long a = 0; a < n_angle_tuples; ++a) {
                    std::array<double, 4> theta{};
                    long rem = a;
                    for (int s = 0; s < n_slots; ++s) {
                        theta[form.angle_slots[s] - 1] = (rem % 16) * (kTwoPi / 16.0);
                        rem /= 16;
                    }
                    check.max_dev =
                        std::max(check.max_dev, probe_deviation(form, probe, p, theta));
                    ++check.samples;
                }
            }
        }
        for (int r = 0; r < random_samples; ++r) {
            std::array<double, 4> theta{};
            const double p = unit(rng);
            for (int slot : form.angle_slots) theta[slot - 1] = angle(rng);
            check.max_dev = std::max(check.max_dev, probe_deviation(form, probe, p, theta));
            ++check.samples;
        }
        check.pass = check.max_dev <= check.tolerance;
        report.all_pass &= check.pass;
        report.checks.push_back(std::move(check));
    }

    if (!golden_path.empty()) {
        VerifyCheck check;
        check.name = "golden(" + golden_path + ")";
        check.tolerance = 1e-9;
        try {
            const std::vector<GoldenRow> rows = parse_golden_csv(read_text_file(golden_path));
            if (rows.empty()) throw std::runtime_error("golden file has no rows");
            for (const GoldenRow& row : rows) {
                const forms::ClosedForm& form = forms::form_by_name(row.form);
                check.max_dev =
                    std::max(check.max_dev, std::abs(form.eval(row.p, row.theta) - row.value));
                ++check.samples;
            }
            check.pass = check.max_dev <= check.tolerance;
        } catch (const std::exception& e) {
            check.name += " [" + std::string(e.what()) + "]";
            check.max_dev = std::numeric_limits<double>::infinity();
            check.pass = false;
        }
        report.all_pass &= check.pass;
        report.checks.push_back(std::move(check));
    }
    return report;
}

std::string format_verify(const VerifyReport& report) {
    std::ostringstream out;
    out << "closed-form verification (convention " << report.convention << ")\n";
    for (const VerifyCheck& check : report.checks) {
        char line[200];
        std::snprintf(line, sizeof(line), "%-28s samples %-6ld max|dev| %-12.3e tol %-8.0e %s\n",
                      check.name.c_str(), check.samples, check.max_dev, check.tolerance,
                      check.pass ? "PASS" : "FAIL");
        out << line;
    }
    out << (report.all_pass ? "verify: all checks PASS\n" : "verify: some checks FAIL\n");
    return out.str();
}

int write_golden(const std::string& path, int rows_per_form, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::vector<GoldenRow> rows;
    for (const forms::ClosedForm& form : forms::registry()) {
        for (int r = 0; r < rows_per_form; ++r) {
            GoldenRow row;
            row.form = form.name;
            row.p = unit(rng);
            for (int slot : form.angle_slots) row.theta[slot - 1] = angle(rng);
            row.value = form.eval(row.p, row.theta);
            rows.push_back(std::move(row));
        }
    }
    write_text_file(path, emit_golden_csv(rows));
    return static_cast<int>(rows.size());
}

}  // namespace cdsim
