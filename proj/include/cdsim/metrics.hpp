#pragma once

#include <vector>

#include "cdsim/register.hpp"

namespace cdsim {

// Minimal eigenvalue of the partial transpose over `qubits`.  Negative
// values certify entanglement across that cut; the magnitude is the
// negativity reported throughout.
double pt_min_eigenvalue(const DensityState& state, const std::vector<int>& qubits);

// All eigenvalues of the partial transpose, ascending.
std::vector<double> pt_eigenvalues(const DensityState& state, const std::vector<int>& qubits);

// Expectation of the projector witness W = I/2 - |C><C| for the chosen
// resource state; negative iff the overlap with |C> exceeds 1/2.
double witness_expectation(const DensityState& state, Rep rep);

// <psi| rho |psi>
double overlap_fidelity(const DensityState& state, const std::vector<cplx>& psi);

// Two-qubit concurrence ingredients: lambda = l1 - l2 - l3 - l4 where l_i
// are the square roots, in decreasing order, of the eigenvalues of
// sqrt(rho) (Y Y rho* Y Y) sqrt(rho).  concurrence() clamps at zero.
double concurrence_lambda(const DensityState& state);
double concurrence(const DensityState& state);

}  // namespace cdsim
