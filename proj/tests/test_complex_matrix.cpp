#include <cmath>
#include <random>

#include "cdsim/complex_matrix.hpp"
#include "doctest.h"

using namespace cdsim;

namespace {

ComplexMatrix fixed_hermitian() {
    ComplexMatrix a(4, 4);
    const cplx rows[4][4] = {
        {{2.0, 0.0}, {1.0, 2.0}, {0.5, -1.0}, {0.0, 0.25}},
        {{1.0, -2.0}, {-1.0, 0.0}, {3.0, 0.0}, {1.0, -1.0}},
        {{0.5, 1.0}, {3.0, 0.0}, {0.5, 0.0}, {0.0, -2.0}},
        {{0.0, -0.25}, {1.0, 1.0}, {0.0, 2.0}, {-2.5, 0.0}},
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a.at(i, j) = rows[i][j];
    return a;
}

ComplexMatrix random_matrix(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
}

}  // namespace

TEST_CASE("basic algebra") {
    const ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(trace(id) == cplx(3.0, 0.0));
    CHECK(max_abs_diff(id * id, id) == 0.0);

    ComplexMatrix a(2, 2);
    a.at(0, 1) = cplx(0.0, 1.0);
    const ComplexMatrix ad = dagger(a);
    CHECK(ad.at(1, 0) == cplx(0.0, -1.0));
    CHECK(ad.at(0, 1) == cplx(0.0, 0.0));

    const ComplexMatrix k = kron(id, a);
    CHECK(k.rows() == 6);
    CHECK(k.at(0, 1) == cplx(0.0, 1.0));
    CHECK(k.at(2, 3) == cplx(0.0, 1.0));
    CHECK(k.at(0, 3) == cplx(0.0, 0.0));

    CHECK(hermiticity_defect(fixed_hermitian()) == 0.0);
    CHECK(offdiag_norm(id) == 0.0);
}

TEST_CASE("require_finite rejects NaN") {
    ComplexMatrix a(2, 2);
    a.at(0, 0) = cplx(std::nan(""), 0.0);
    CHECK_THROWS(a.require_finite());
}

TEST_CASE("eigenvalues of a fixed hermitian matrix") {
    // reference spectrum computed with an independent solver
    const double expected[4] = {-4.5276161249068272, -3.1353744430066439, 2.4377957613059316,
                                4.2251948066075382};
    const std::vector<double> eigs = hermitian_eigenvalues(fixed_hermitian());
    REQUIRE(eigs.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(eigs[i] - expected[i]) < 1e-12);
}

TEST_CASE("eigensystem invariants on random hermitian matrices") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const ComplexMatrix g = random_matrix(6, seed);
        const ComplexMatrix h = g + dagger(g);
        const EigenSystem es = hermitian_eigensystem(h);
        REQUIRE(static_cast<int>(es.values.size()) == 6);
        for (int i = 1; i < 6; ++i) CHECK(es.values[i - 1] <= es.values[i]);
        // A V = V diag(lambda)
        ComplexMatrix lambda(6, 6);
        for (int i = 0; i < 6; ++i) lambda.at(i, i) = cplx(es.values[i], 0.0);
        CHECK(max_abs_diff(h * es.vectors, es.vectors * lambda) < 1e-12);
        // V unitary
        CHECK(max_abs_diff(dagger(es.vectors) * es.vectors, ComplexMatrix::identity(6)) < 1e-12);
    }
}

TEST_CASE("eigensolver rejects non-hermitian input") {
    ComplexMatrix a(2, 2);
    a.at(0, 1) = cplx(1.0, 0.0);  // a(1,0) stays 0
    CHECK_THROWS(hermitian_eigenvalues(a));
}

TEST_CASE("eigenvalue multiplicity counting") {
    const std::vector<double> eigs = {-0.25, -0.25, -0.25, 0.1, 0.1, 0.5};
    CHECK(eigenvalue_multiplicity(eigs, -0.25, 1e-11) == 3);
    CHECK(eigenvalue_multiplicity(eigs, 0.1, 1e-11) == 2);
    CHECK(eigenvalue_multiplicity(eigs, 0.3, 1e-11) == 0);
}

TEST_CASE("psd_sqrt squares back") {
    const ComplexMatrix b = random_matrix(4, 7);
    const ComplexMatrix p = b * dagger(b);
    const ComplexMatrix s = psd_sqrt(p);
    CHECK(max_abs_diff(s * s, p) < 1e-9);
    CHECK(hermiticity_defect(s) < 1e-12);
}

TEST_CASE("psd_sqrt rejects indefinite input") {
    ComplexMatrix a = ComplexMatrix::identity(2);
    a.at(1, 1) = cplx(-0.5, 0.0);
    CHECK_THROWS(psd_sqrt(a));
}
