#pragma once

#include <array>
#include <string>
#include <vector>

#include "cdsim/metrics.hpp"
#include "cdsim/noise.hpp"

namespace cdsim {

// A kept pair of chain sites, 1-based as in the four-qubit chain labelling;
// the other two sites are measured.  Supported pairs: (3,4), (2,4), (2,3),
// (1,4).
struct PairSpec {
    int j = 3;
    int k = 4;
};

inline bool operator==(PairSpec a, PairSpec b) { return a.j == b.j && a.k == b.k; }

struct PairRoute {
    std::array<int, 2> measured;     // 0-based qubits that get measured
    std::array<int, 2> kept;         // 0-based qubits that survive
    std::array<int, 2> angle_slots;  // 1-based angle labels, slot = qubit + 1
};

PairRoute pair_route(PairSpec pair);
const std::vector<PairSpec>& supported_pairs();
PairSpec pair_from_label(const std::string& label);  // "34", "24", "23", "14"
std::string pair_label(PairSpec pair);

// Resource state, optionally mixed with white noise (weight q on the pure
// state), after per-qubit phase damping.
DensityState dephased_cluster(Rep rep, const DephasingProfile& profile, double q = 1.0);
DensityState dephased_cluster(Rep rep, double p, double q = 1.0);

// Measurement patterns: every measured qubit is projected onto the -1
// outcome of cos(theta) X + sin(theta) Y at its nominal angle.
std::vector<MeasurementStep> rotation_steps(double t1, double t2, double t3);
std::vector<MeasurementStep> pair_steps(PairSpec pair, double ta, double tb);

DensityState rotation_output(Rep rep, double p, double t1, double t2, double t3, double q = 1.0);
DensityState pair_output(Rep rep, double p, PairSpec pair, double ta, double tb, double q = 1.0);

// Fidelity of the noisy output against the noiseless output of the same
// pattern: Tr[rho_p rho_0] (the p = 0 output is pure).
double rotation_fidelity(Rep rep, double p, double t1, double t2, double t3, double q = 1.0);
double pair_fidelity(Rep rep, double p, PairSpec pair, double ta, double tb, double q = 1.0);
// Unclamped concurrence lambda of the kept pair.
double pair_lambda(Rep rep, double p, PairSpec pair, double ta, double tb, double q = 1.0);

// Tr[a b] for two states on the same register.
double state_overlap(const DensityState& a, const DensityState& b);

namespace detail {

// factor[r ^ c] is the attenuation a matrix entry (r, c) picks up under the
// profile; table index is the xor of row and column indices.
std::vector<double> dephasing_xor_factors(const DephasingProfile& profile, int n_qubits);
std::vector<double> dephasing_xor_factors(double p, int n_qubits);

// Measurement geometry frozen for one base state and one set of steps, so a
// scan over dephasing strengths costs one small contraction per point:
//   out[s][t] = sum_{mu,nu} conj(w_mu) w_nu factor[r(mu,s) ^ c(nu,t)] base[r][c]
class MeasurementKernel {
  public:
    MeasurementKernel(const DensityState& base, const std::vector<MeasurementStep>& steps);

    int kept_dim() const { return kept_dim_; }
    // Unnormalized projected output into `out` (kept_dim x kept_dim);
    // returns the branch probability.
    double project(const std::vector<double>& xor_factor, ComplexMatrix& out) const;
    // Normalized output straight into a DensityState.
    DensityState output(const std::vector<double>& xor_factor) const;
    // Tr[output(xor_factor) reference] without materializing the state.
    double overlap(const std::vector<double>& xor_factor, const ComplexMatrix& reference) const;
    // Under a uniform profile the unnormalized output is a polynomial in
    // u = sqrt(1-p): out(u) = sum_c u^c coeff[c].  Returns the five
    // coefficient matrices (kept_dim x kept_dim).
    std::array<ComplexMatrix, 5> power_coefficients() const;

  private:
    const DensityState* base_;
    int kept_dim_ = 0;
    int m_dim_ = 0;
    std::vector<cplx> w_outer_;    // conj(w_mu) w_nu, m_dim x m_dim
    std::vector<int> m_index_;
    std::vector<int> k_index_;
};

}  // namespace detail

}  // namespace cdsim
