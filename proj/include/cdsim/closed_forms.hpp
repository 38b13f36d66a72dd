#pragma once

#include <array>
#include <string>
#include <vector>

namespace cdsim::forms {

// Closed-form expressions for the dephased-cluster metrics, as functions of
// the uniform dephasing strength p and the measurement angles.  Each one is
// pinned against the numeric pipeline by the verification suite.

// --- logical rotation fidelity -------------------------------------------

// Depends on the angles only through theta1 + theta2.
double rotation_fidelity_c4(double p, double theta_sum);
double rotation_fidelity_c4h(double p, double t1, double t2, double t3);

// --- witness and partial-transpose extremal eigenvalues -------------------

double witness_c4(double p);
double witness_c4h(double p);

// Minimal partial-transpose eigenvalue branches for the cuts {1|234},
// {12|34}, {13|24}, {14|23} (1-based qubit labels).
double n1_c4(double p);
double n12_c4(double p);
double n13_c4(double p);
double n14_c4(double p);
double n1_c4h(double p);
double n12_c4h(double p);
double n13_c4h(double p);
double n14_c4h(double p);

// --- kept-pair fidelities --------------------------------------------------

double pair_fidelity34_c4(double p, double theta_sum);  // == rotation_fidelity_c4
double pair_fidelity_other_c4(double p);                // pairs (2,4), (2,3), (1,4)
double pair_fidelity34_c4h(double p, double t1, double t2);
double pair_fidelity24_c4h(double p, double t1, double t3);
double pair_fidelity23_c4h(double p, double t1, double t4);
double pair_fidelity14_c4h(double p, double t2, double t3);

// --- kept-pair concurrences (lambda, not clamped at zero) ------------------

double pair_lambda34_c4(double p, double theta_sum);
double pair_lambda_other_c4(double p);                  // pairs (2,4), (2,3), (1,4)
double pair_lambda14_c4h(double p, double t2, double t3);

// --- registry ---------------------------------------------------------------

struct ClosedForm {
    std::string name;
    // Which of the four angle slots the form reads (1-based); empty when the
    // form is angle-independent.
    std::vector<int> angle_slots;
    double (*eval)(double p, const std::array<double, 4>& theta);
};

const std::vector<ClosedForm>& registry();
const ClosedForm& form_by_name(const std::string& name);

}  // namespace cdsim::forms
