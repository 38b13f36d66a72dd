#include "cdsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdsim {

namespace {

void check_strength(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("dephasing strength must lie in [0, 1]");
}

void check_profile(const DephasingProfile& profile, int n_qubits) {
    if (static_cast<int>(profile.p.size()) != n_qubits)
        throw std::invalid_argument("profile length does not match qubit count");
    for (double p : profile.p) check_strength(p);
}

}  // namespace

DephasingProfile DephasingProfile::uniform(double p, int n_qubits) {
    check_strength(p);
    if (n_qubits <= 0) throw std::invalid_argument("qubit count must be positive");
    return DephasingProfile{std::vector<double>(n_qubits, p)};
}

DephasingProfile DephasingProfile::per_qubit(const std::vector<double>& p) {
    if (p.empty()) throw std::invalid_argument("profile must not be empty");
    for (double v : p) check_strength(v);
    return DephasingProfile{p};
}

DephasingProfile DephasingProfile::from_rate(double kappa, double tau, int n_qubits) {
    return uniform(p_of_time(kappa, tau), n_qubits);
}

DephasingProfile DephasingProfile::from_schedule(double base, double step,
                                                 const std::vector<int>& multipliers) {
    if (multipliers.empty()) throw std::invalid_argument("profile must not be empty");
    std::vector<double> p;
    for (int k : multipliers) p.push_back(std::clamp(base + k * step, 0.0, 1.0));
    return DephasingProfile{p};
}

double p_of_time(double kappa, double tau) {
    if (kappa < 0.0 || tau < 0.0) throw std::invalid_argument("rate and time must be nonnegative");
    return 1.0 - std::exp(-kappa * tau);
}

double compose_dephasing(double p1, double p2) {
    check_strength(p1);
    check_strength(p2);
    return 1.0 - (1.0 - p1) * (1.0 - p2);
}

std::vector<ComplexMatrix> dephasing_kraus(double p) {
    check_strength(p);
    ComplexMatrix k1(2, 2), k2(2, 2);
    k1.at(0, 0) = 1.0;
    k1.at(1, 1) = std::sqrt(1.0 - p);
    k2.at(1, 1) = std::sqrt(p);
    return {k1, k2};
}

DensityState apply_dephasing(const DensityState& state, const DephasingProfile& profile) {
    const int n = state.n_qubits;
    check_profile(profile, n);

    std::vector<std::vector<ComplexMatrix>> kraus;
    for (double p : profile.p) kraus.push_back(dephasing_kraus(p));

    const int dim = state.dim();
    DensityState out{n, ComplexMatrix(dim, dim)};
    for (int choice = 0; choice < (1 << n); ++choice) {
        ComplexMatrix op = ComplexMatrix::identity(1);
        for (int q = 0; q < n; ++q) op = kron(op, kraus[q][(choice >> (n - 1 - q)) & 1]);
        out.rho = out.rho + op * state.rho * dagger(op);
    }
    return out;
}

namespace detail {

DensityState apply_dephasing_masked(const DensityState& state, const DephasingProfile& profile) {
    const int n = state.n_qubits;
    check_profile(profile, n);

    const int dim = state.dim();
    std::vector<double> root(n);
    for (int q = 0; q < n; ++q) root[q] = std::sqrt(1.0 - profile.p[q]);
    std::vector<double> factor(dim, 1.0);
    for (int mask = 1; mask < dim; ++mask) {
        const int q = __builtin_ctz(mask);
        factor[mask] = factor[mask & (mask - 1)] * root[n - 1 - q];
    }

    DensityState out{n, ComplexMatrix(dim, dim)};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) out.rho.at(i, j) = factor[i ^ j] * state.rho.at(i, j);
    return out;
}

}  // namespace detail

DensityState mixed_initial(double q, Rep rep) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("mixing weight must lie in [0, 1]");
    DensityState pure = cluster_state(rep);
    const int dim = pure.dim();
    const double floor = (1.0 - q) / dim;
    for (cplx& z : pure.rho.data()) z *= q;
    for (int i = 0; i < dim; ++i) pure.rho.at(i, i) += floor;
    return pure;
}

}  // namespace cdsim
