#pragma once

#include <vector>

#include "cdsim/register.hpp"

namespace cdsim {

// Per-qubit phase-damping strengths, each in [0, 1].
struct DephasingProfile {
    std::vector<double> p;

    static DephasingProfile uniform(double p, int n_qubits = 4);
    static DephasingProfile per_qubit(const std::vector<double>& p);
    // p_q = 1 - exp(-kappa * tau) on every qubit.
    static DephasingProfile from_rate(double kappa, double tau, int n_qubits = 4);
    // p_q = clamp(base + multipliers[q] * step, 0, 1).
    static DephasingProfile from_schedule(double base, double step,
                                          const std::vector<int>& multipliers);
};

// Strength accumulated after time tau at rate kappa: 1 - e^{-kappa tau}.
double p_of_time(double kappa, double tau);
// Strength equivalent to applying p1 then p2: 1 - (1-p1)(1-p2).
double compose_dephasing(double p1, double p2);

// Single-qubit Kraus pair {diag(1, sqrt(1-p)), diag(0, sqrt(p))}.
std::vector<ComplexMatrix> dephasing_kraus(double p);

// Phase damping on every qubit, computed as the explicit sum over all 2^n
// Kraus-operator products.  detail::apply_dephasing_masked is the equivalent
// closed form used on hot paths; tests pin the two to each other.
DensityState apply_dephasing(const DensityState& state, const DephasingProfile& profile);

namespace detail {
// Each off-diagonal entry picks up prod sqrt(1 - p_q) over the qubits whose
// bits differ between row and column.
DensityState apply_dephasing_masked(const DensityState& state, const DephasingProfile& profile);
}  // namespace detail

// (1-q)/2^n * I + q |C><C| for the chosen resource state.
DensityState mixed_initial(double q, Rep rep);

}  // namespace cdsim
