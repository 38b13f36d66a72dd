#pragma once

#include <array>
#include <string>
#include <vector>

#include "cdsim/density_state.hpp"

namespace cdsim {

// Which four-qubit resource state a computation starts from: the canonical
// cluster state, or the same state with Hadamards applied on the end qubits
// (equivalently, the CZ-chain construction applied to |+>^4).
enum class Rep { c4, c4h };

std::string rep_name(Rep rep);
Rep rep_from_name(const std::string& name);

// --- gates ------------------------------------------------------------

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix gate_h();            // (X + Z)/sqrt(2)
ComplexMatrix gate_z(double alpha);  // diag(1, e^{i alpha})
ComplexMatrix gate_x(double alpha);  // H Z(alpha) H
ComplexMatrix gate_cz();           // diag(1, 1, 1, -1)

// --- resource states ---------------------------------------------------

std::vector<cplx> cluster_c4_vector();
std::vector<cplx> cluster_c4h_vector();
// |+>^4 followed by CZ on neighbouring pairs (0,1), (1,2), (2,3).
std::vector<cplx> cluster_by_cz_chain();
std::vector<cplx> cluster_vector(Rep rep);
DensityState cluster_state(Rep rep);

// --- operations on a register -------------------------------------------

// Conjugate state by gate embedded at qubit q.  gate must be 2x2 unitary
// to within 1e-10.
DensityState apply_single_qubit_gate(const DensityState& state, const ComplexMatrix& gate, int q);

// Measurement of cos(theta) X + sin(theta) Y on one qubit.  Outcomes are
// labelled by the eigenvalue sign.  The convention fixing which projector
// carries which label is identified by measurement_convention() and is
// asserted by tests; all reports quote it.
enum class Outcome { plus_one, minus_one };

// For outcome -1 the projector is (I - cos(theta) X - sin(theta) Y)/2,
// i.e. rank-1 onto (|0> - e^{i theta} |1>)/sqrt(2).
ComplexMatrix xy_projector(double theta, Outcome outcome);

inline const char* measurement_convention() { return "xy-minus-one=(I-cosX-sinY)/2"; }

struct MeasurementStep {
    int qubit = 0;
    double theta = 0.0;
    Outcome outcome = Outcome::minus_one;
};

struct MeasurementResult {
    DensityState state;  // renormalized post-measurement state on the kept qubits
    double probability = 0.0;  // joint probability of the requested outcomes
};

// Project the listed qubits onto the requested XY outcomes, trace them out,
// and renormalize.  Kept qubits retain their relative order.  Throws if the
// joint probability is below 1e-12.
MeasurementResult measure_postselect(const DensityState& state,
                                     const std::vector<MeasurementStep>& steps);

// H Z(t3) X(t2) Z(t1): the rotation a three-step XY measurement pattern
// implements on the encoded qubit in the noiseless limit.  All angles zero
// gives H.
ComplexMatrix ideal_logical_rotation(double t1, double t2, double t3);

}  // namespace cdsim
