#include <cmath>
#include <random>

#include "cdsim/noise.hpp"
#include "doctest.h"

using namespace cdsim;

namespace {

DensityState random_density(unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix rho(16, 16);
    // mixture of three random pure states
    for (int k = 0; k < 3; ++k) {
        std::vector<cplx> psi(16);
        double norm2 = 0.0;
        for (cplx& a : psi) {
            a = cplx(gauss(rng), gauss(rng));
            norm2 += std::norm(a);
        }
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j)
                rho.at(i, j) += psi[i] * std::conj(psi[j]) / (3.0 * norm2);
    }
    return DensityState{4, rho};
}

}  // namespace

TEST_CASE("kraus pair is complete") {
    for (double p : {0.0, 0.3, 0.77, 1.0}) {
        const auto kraus = dephasing_kraus(p);
        ComplexMatrix sum(2, 2);
        for (const ComplexMatrix& k : kraus) sum = sum + dagger(k) * k;
        CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) < 1e-15);
    }
    CHECK_THROWS(dephasing_kraus(-0.1));
    CHECK_THROWS(dephasing_kraus(1.1));
}

TEST_CASE("explicit kraus sum equals the mask fast path") {
    const DensityState state = random_density(5);
    for (const DephasingProfile& profile :
         {DephasingProfile::uniform(0.35), DephasingProfile({0.1, 0.9, 0.0, 0.55})}) {
        const DensityState slow = apply_dephasing(state, profile);
        const DensityState fast = detail::apply_dephasing_masked(state, profile);
        CHECK(max_abs_diff(slow.rho, fast.rho) < 1e-14);
        CHECK_NOTHROW(validate_density(fast));
    }
}

TEST_CASE("channel preserves diagonal and scales off-diagonals") {
    const DensityState state = random_density(9);
    const DensityState out = apply_dephasing(state, DephasingProfile::uniform(0.6));
    for (int i = 0; i < 16; ++i) CHECK(std::abs(out.rho.at(i, i) - state.rho.at(i, i)) < 1e-14);
    // one bit differs between 0 and 1: factor sqrt(1-p)
    const double root = std::sqrt(0.4);
    CHECK(std::abs(out.rho.at(0, 1) - state.rho.at(0, 1) * cplx(root, 0.0)) < 1e-14);
    // all four bits differ between 0 and 15: factor (1-p)^2
    CHECK(std::abs(out.rho.at(0, 15) - state.rho.at(0, 15) * cplx(0.16, 0.0)) < 1e-14);

    const DensityState dead = apply_dephasing(state, DephasingProfile::uniform(1.0));
    CHECK(offdiag_norm(dead.rho) < 1e-15);
    const DensityState same = apply_dephasing(state, DephasingProfile::uniform(0.0));
    CHECK(max_abs_diff(same.rho, state.rho) < 1e-15);
}

TEST_CASE("two applications compose as a semigroup") {
    const DensityState state = random_density(13);
    for (auto [p1, p2] : {std::pair{0.2, 0.5}, std::pair{0.64, 0.8}}) {
        const DensityState twice =
            apply_dephasing(apply_dephasing(state, DephasingProfile::uniform(p1)),
                            DephasingProfile::uniform(p2));
        const double combined = compose_dephasing(p1, p2);
        CHECK(combined == doctest::Approx(1.0 - (1.0 - p1) * (1.0 - p2)).epsilon(1e-15));
        const DensityState once = apply_dephasing(state, DephasingProfile::uniform(combined));
        CHECK(max_abs_diff(twice.rho, once.rho) < 1e-14);
    }
}

TEST_CASE("exposure-time map") {
    CHECK(p_of_time(0.0, 5.0) == 0.0);
    CHECK(std::abs(p_of_time(0.5, 1.2) - (1.0 - std::exp(-0.6))) < 1e-15);
    CHECK_THROWS(p_of_time(-1.0, 1.0));
    CHECK_THROWS(p_of_time(1.0, -1.0));

    const DephasingProfile from_rate = DephasingProfile::from_rate(0.5, 1.2);
    for (double p : from_rate.p) CHECK(std::abs(p - (1.0 - std::exp(-0.6))) < 1e-15);
}

TEST_CASE("profile factories") {
    const DephasingProfile uniform = DephasingProfile::uniform(0.25);
    REQUIRE(uniform.p.size() == 4);
    for (double p : uniform.p) CHECK(p == 0.25);

    CHECK_THROWS(DephasingProfile::uniform(1.5));
    CHECK_THROWS(DephasingProfile::per_qubit({0.1, -0.2, 0.3, 0.4}));
    CHECK_THROWS(DephasingProfile::per_qubit({0.1, 0.2, 1.3, 0.4}));

    // gradient schedule clamps into [0, 1]
    const DephasingProfile sched = DephasingProfile::from_schedule(0.8, 0.15, {-7, 0, 1, 2});
    CHECK(sched.p[0] == 0.0);
    CHECK(sched.p[1] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(sched.p[2] == doctest::Approx(0.95).epsilon(1e-15));
    CHECK(sched.p[3] == 1.0);
}

TEST_CASE("mixed initial register") {
    const DensityState pure = mixed_initial(1.0, Rep::c4);
    CHECK(std::abs(purity(pure) - 1.0) < 1e-14);

    const DensityState flat = mixed_initial(0.0, Rep::c4h);
    for (int i = 0; i < 16; ++i) CHECK(std::abs(flat.rho.at(i, i).real() - 1.0 / 16.0) < 1e-15);
    CHECK(offdiag_norm(flat.rho) < 1e-15);

    const DensityState mix = mixed_initial(0.4, Rep::c4);
    CHECK(std::abs(trace(mix.rho).real() - 1.0) < 1e-14);
    CHECK_NOTHROW(validate_density(mix));
    CHECK_THROWS(mixed_initial(-0.1, Rep::c4));
    CHECK_THROWS(mixed_initial(1.2, Rep::c4));
}
