#include "cdsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace cdsim {

std::vector<double> pt_eigenvalues(const DensityState& state, const std::vector<int>& qubits) {
    return hermitian_eigenvalues(partial_transpose(state, qubits));
}

double pt_min_eigenvalue(const DensityState& state, const std::vector<int>& qubits) {
    return pt_eigenvalues(state, qubits).front();
}

double witness_expectation(const DensityState& state, Rep rep) {
    return 0.5 - overlap_fidelity(state, cluster_vector(rep));
}

double overlap_fidelity(const DensityState& state, const std::vector<cplx>& psi) {
    if (static_cast<int>(psi.size()) != state.dim())
        throw std::invalid_argument("statevector dimension does not match state");
    cplx sum(0.0, 0.0);
    for (int i = 0; i < state.dim(); ++i)
        for (int j = 0; j < state.dim(); ++j)
            sum += std::conj(psi[i]) * state.rho.at(i, j) * psi[j];
    return sum.real();
}

double concurrence_lambda(const DensityState& state) {
    if (state.n_qubits != 2) throw std::invalid_argument("concurrence needs a two-qubit state");

    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    ComplexMatrix conj_rho(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) conj_rho.at(i, j) = std::conj(state.rho.at(i, j));
    const ComplexMatrix spin_flipped = yy * conj_rho * yy;

    const ComplexMatrix root = psd_sqrt(state.rho);
    const ComplexMatrix m = root * spin_flipped * root;

    std::vector<double> eigs = hermitian_eigenvalues(m);
    // The kernel typically has exact zero modes; square roots would amplify
    // their O(eps) numerical residue to O(sqrt(eps)), so clamp the noise
    // floor to zero first.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(eigs.front()), std::abs(eigs.back()));
    std::vector<double> l;
    for (double e : eigs) {
        if (e < -1e-12)
            throw std::runtime_error("concurrence kernel has a significantly negative eigenvalue");
        l.push_back(e <= floor ? 0.0 : std::sqrt(e));
    }
    std::sort(l.begin(), l.end(), std::greater<double>());
    return l[0] - l[1] - l[2] - l[3];
}

double concurrence(const DensityState& state) {
    return std::max(0.0, concurrence_lambda(state));
}

}  // namespace cdsim
