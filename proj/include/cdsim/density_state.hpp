#pragma once

#include <vector>

#include "cdsim/complex_matrix.hpp"

namespace cdsim {

// Density matrix on n_qubits qubits.  Qubit 0 is the leftmost tensor factor,
// i.e. the most significant bit of the matrix index.
struct DensityState {
    int n_qubits = 0;
    ComplexMatrix rho;

    int dim() const { return 1 << n_qubits; }
};

DensityState density_from_statevector(const std::vector<cplx>& psi);

// Throws std::invalid_argument unless rho is Hermitian and unit-trace to
// within tol and its spectrum is >= -tol.
void validate_density(const DensityState& state, double tol = 1e-10);

// Transpose the indices of the listed qubits only.
ComplexMatrix partial_transpose(const DensityState& state, const std::vector<int>& qubits);

// Reduced state on `keep`; output qubit j is input qubit keep[j].
DensityState partial_trace(const DensityState& state, const std::vector<int>& keep);

double purity(const DensityState& state);

}  // namespace cdsim
