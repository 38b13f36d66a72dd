#include "cdsim/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace cdsim::forms {

namespace {

double sq(double x) { return x * x; }

// Clamp tiny negative radicands produced by rounding; anything materially
// negative means the expression was evaluated outside its domain.
double safe_sqrt(double x) {
    if (x < -1e-10) throw std::domain_error("negative radicand in closed form");
    return std::sqrt(std::max(x, 0.0));
}

}  // namespace

double rotation_fidelity_c4(double p, double theta_sum) {
    return 0.25 * (4.0 + p * (p - 3.0) + p * (1.0 - p) * std::cos(2.0 * theta_sum));
}

double rotation_fidelity_c4h(double p, double t1, double t2, double t3) {
    const double q = std::sqrt(1.0 - p);
    const double q3 = q * q * q;
    const double pp = -q3;  // coefficient fitted against the numeric pipeline
    using std::cos;
    using std::sin;
    return (2.0 * q3 * cos(2.0 * (t1 - t2)) + 4.0 * pp * cos(2.0 * t2) +
            2.0 * q3 * cos(2.0 * (t1 + t2)) + 2.0 * pp * cos(2.0 * (t1 - t3)) +
            q3 * cos(2.0 * (t1 - t2 - t3)) + 2.0 * pp * cos(2.0 * (t2 - t3)) +
            q3 * cos(2.0 * (t1 + t2 - t3)) +
            4.0 * (p - 1.0) * cos(2.0 * t1) * (q - 2.0 * (p + 1.0) * sq(cos(t3))) +
            12.0 * pp * cos(2.0 * t3) + 4.0 * (11.0 + 5.0 * q3 + 3.0 * cos(2.0 * t3)) +
            2.0 * pp * cos(2.0 * (t1 + t3)) + q3 * cos(2.0 * (t1 - t2 + t3)) +
            2.0 * pp * cos(2.0 * (t2 + t3)) + q3 * cos(2.0 * (t1 + t2 + t3)) +
            16.0 * cos(2.0 * t2) * sq(cos(t3)) * sq(sin(t1)) +
            8.0 * p * p * (sq(cos(t3)) * (1.0 + 2.0 * cos(2.0 * t2) * sq(sin(t1))) -
                           cos(t2) * sin(2.0 * t1) * sin(2.0 * t3)) +
            8.0 * p * (-4.0 * sq(cos(t3)) * (1.0 + cos(2.0 * t2) * sq(sin(t1))) +
                       cos(t2) * sin(2.0 * t1) * sin(2.0 * t3))) /
           64.0;
}

double witness_c4(double p) { return -0.25 * (p * p - 4.0 * p + 2.0); }

double witness_c4h(double p) {
    const double q = std::sqrt(1.0 - p);
    return (-8.0 * q + p * (8.0 + 4.0 * q - p)) / 16.0;
}

double n1_c4(double p) { return -0.25 * (p * p - 3.0 * p + 2.0); }
double n12_c4(double p) { return -0.25 * (p * p - 4.0 * p + 2.0); }
double n13_c4(double p) { return 0.25 * (p - 1.0); }
double n14_c4(double p) { return 0.25 * (p - 1.0); }

double n1_c4h(double p) {
    const double q = std::sqrt(1.0 - p);
    return (-4.0 - 4.0 * q * q * q + 6.0 * p - p * p) / 16.0;
}
double n12_c4h(double p) { return n1_c4h(p); }
double n13_c4h(double p) {
    const double q = std::sqrt(1.0 - p);
    return (-4.0 * q + 2.0 * p - p * p) / 16.0;
}
double n14_c4h(double p) { return (-4.0 + 4.0 * p + p * p) / 16.0; }

double pair_fidelity34_c4(double p, double theta_sum) {
    return rotation_fidelity_c4(p, theta_sum);
}

double pair_fidelity_other_c4(double p) { return 0.25 * sq(p - 2.0); }

double pair_fidelity34_c4h(double p, double t1, double t2) {
    const double q = std::sqrt(1.0 - p);
    using std::cos;
    using std::sin;
    return (8.0 * (1.0 + q) + p * (-5.0 - 4.0 * q + p) -
            p * (p - 1.0) * (cos(2.0 * t1) - 2.0 * cos(2.0 * t2) * sq(sin(t1)))) /
           16.0;
}

double pair_fidelity24_c4h(double p, double t1, double t3) {
    const double q = std::sqrt(1.0 - p);
    using std::cos;
    using std::sin;
    return (8.0 * (1.0 + q) + p * (-5.0 - 4.0 * q + p) + p * cos(2.0 * t1) * (1.0 + 2.0 * q - p) +
            2.0 * p * cos(2.0 * t3) * (q + (p - 1.0) * sq(sin(t1)))) /
           16.0;
}

double pair_fidelity23_c4h(double p, double t1, double t4) {
    const double q = std::sqrt(1.0 - p);
    using std::cos;
    using std::sin;
    return (10.0 + 6.0 * q - p * (7.0 + 2.0 * q - p) +
            cos(2.0 * t4) * (-2.0 + 2.0 * q + 3.0 * p - p * p) +
            2.0 * cos(2.0 * t1) *
                (q - q * q * q * cos(2.0 * t4) - (p - 2.0) * (p - 1.0) * sq(sin(t4)))) /
           16.0;
}

double pair_fidelity14_c4h(double p, double t2, double t3) {
    const double q = std::sqrt(1.0 - p);
    using std::cos;
    return (10.0 + 6.0 * q - p * (7.0 + 6.0 * q - p) +
            (p - 1.0) * (-2.0 + 2.0 * q + p) * (cos(2.0 * t2) + 2.0 * sq(cos(t2)) * cos(2.0 * t3))) /
           16.0;
}

double pair_lambda34_c4(double p, double theta_sum) {
    using std::cos;
    using std::sin;
    const double f4 = sq(sq(p - 1.0));
    const double a = 2.0 + p * (p - 2.0) * sq(p - 1.0) -
                     sq(p - 1.0) * (2.0 + p * (p - 2.0)) * cos(2.0 * theta_sum);
    const double b = 2.0 * safe_sqrt(-2.0 * f4 *
                                     (-1.0 + p * (p - 2.0) + sq(p - 1.0) * cos(2.0 * theta_sum)) *
                                     sq(sin(theta_sum)));
    return (safe_sqrt(a + b) - safe_sqrt(a - b)) / (2.0 * std::sqrt(2.0));
}

double pair_lambda_other_c4(double p) { return 0.5 * (p * p - 4.0 * p + 2.0); }

double pair_lambda14_c4h(double p, double t2, double t3) {
    using std::cos;
    const double rad = sq(p - 1.0) * (16.0 + p * (p - 16.0) +
                                      p * p * (cos(2.0 * t2) + 2.0 * sq(cos(t2)) * cos(2.0 * t3)));
    const double c = 0.25 * safe_sqrt(rad);
    return std::max(-0.5 * p - c, -0.5 * p + c);
}

namespace {

std::vector<ClosedForm> build_registry() {
    using A = std::array<double, 4>;
    return {
        {"f_rotation_c4", {1, 2}, [](double p, const A& t) { return rotation_fidelity_c4(p, t[0] + t[1]); }},
        {"f_rotation_c4h", {1, 2, 3}, [](double p, const A& t) { return rotation_fidelity_c4h(p, t[0], t[1], t[2]); }},
        {"witness_c4", {}, [](double p, const A&) { return witness_c4(p); }},
        {"witness_c4h", {}, [](double p, const A&) { return witness_c4h(p); }},
        {"n1_c4", {}, [](double p, const A&) { return n1_c4(p); }},
        {"n12_c4", {}, [](double p, const A&) { return n12_c4(p); }},
        {"n13_c4", {}, [](double p, const A&) { return n13_c4(p); }},
        {"n14_c4", {}, [](double p, const A&) { return n14_c4(p); }},
        {"n1_c4h", {}, [](double p, const A&) { return n1_c4h(p); }},
        {"n12_c4h", {}, [](double p, const A&) { return n12_c4h(p); }},
        {"n13_c4h", {}, [](double p, const A&) { return n13_c4h(p); }},
        {"n14_c4h", {}, [](double p, const A&) { return n14_c4h(p); }},
        {"f_pair34_c4", {1, 2}, [](double p, const A& t) { return pair_fidelity34_c4(p, t[0] + t[1]); }},
        {"f_pair24_c4", {}, [](double p, const A&) { return pair_fidelity_other_c4(p); }},
        {"f_pair34_c4h", {1, 2}, [](double p, const A& t) { return pair_fidelity34_c4h(p, t[0], t[1]); }},
        {"f_pair24_c4h", {1, 3}, [](double p, const A& t) { return pair_fidelity24_c4h(p, t[0], t[2]); }},
        {"f_pair23_c4h", {1, 4}, [](double p, const A& t) { return pair_fidelity23_c4h(p, t[0], t[3]); }},
        {"f_pair14_c4h", {2, 3}, [](double p, const A& t) { return pair_fidelity14_c4h(p, t[1], t[2]); }},
        {"c_pair34_c4", {1, 2}, [](double p, const A& t) { return pair_lambda34_c4(p, t[0] + t[1]); }},
        {"c_pair24_c4", {}, [](double p, const A&) { return pair_lambda_other_c4(p); }},
        {"c_pair14_c4h", {2, 3}, [](double p, const A& t) { return pair_lambda14_c4h(p, t[1], t[2]); }},
    };
}

}  // namespace

const std::vector<ClosedForm>& registry() {
    static const std::vector<ClosedForm> reg = build_registry();
    return reg;
}

const ClosedForm& form_by_name(const std::string& name) {
    for (const ClosedForm& f : registry())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown closed form: " + name);
}

}  // namespace cdsim::forms
