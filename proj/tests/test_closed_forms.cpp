#include <cmath>
#include <set>

#include "cdsim/closed_forms.hpp"
#include "doctest.h"

using namespace cdsim;

TEST_CASE("fidelities start at one and stay in range") {
    const double pi = 3.14159265358979323846;
    for (int a = 0; a < 8; ++a) {
        const double t1 = a * pi / 4.0, t2 = (a * 3 % 8) * pi / 4.0, t3 = (a * 5 % 8) * pi / 4.0;
        CHECK(std::abs(forms::rotation_fidelity_c4(0.0, t1 + t2) - 1.0) < 1e-14);
        CHECK(std::abs(forms::rotation_fidelity_c4h(0.0, t1, t2, t3) - 1.0) < 1e-14);
        CHECK(std::abs(forms::pair_fidelity34_c4h(0.0, t1, t2) - 1.0) < 1e-14);
        CHECK(std::abs(forms::pair_fidelity14_c4h(0.0, t2, t3) - 1.0) < 1e-14);
        for (int ip = 0; ip <= 10; ++ip) {
            const double p = ip / 10.0;
            for (double f : {forms::rotation_fidelity_c4(p, t1 + t2),
                             forms::rotation_fidelity_c4h(p, t1, t2, t3),
                             forms::pair_fidelity24_c4h(p, t1, t3),
                             forms::pair_fidelity23_c4h(p, t1, t2)}) {
                CHECK(f > -1e-12);
                CHECK(f < 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("negativity and witness roots sit at the algebraic constants") {
    const double root2 = std::sqrt(2.0);
    CHECK(std::abs(forms::witness_c4(0.0) - (-0.5)) < 1e-15);
    CHECK(std::abs(forms::witness_c4(2.0 - root2)) < 1e-14);
    CHECK(std::abs(forms::n12_c4(2.0 - root2)) < 1e-14);
    CHECK(std::abs(forms::witness_c4h(2.0 * (std::pow(2.0, 0.75) - root2))) < 1e-14);
    CHECK(std::abs(forms::n1_c4h(2.0 * root2 - 2.0)) < 1e-14);
    CHECK(std::abs(forms::n12_c4h(2.0 * root2 - 2.0)) < 1e-14);
    CHECK(std::abs(forms::n14_c4h(2.0 * root2 - 2.0)) < 1e-14);
    CHECK(std::abs(forms::n13_c4h(0.9379798870808616)) < 1e-12);
    // single-site and odd cuts of the plain register stay strictly negative
    for (int ip = 0; ip <= 10; ++ip) {
        const double p = ip / 10.0;
        if (p < 1.0) {
            CHECK(forms::n1_c4(p) < 0.0);
            CHECK(forms::n13_c4(p) < 0.0);
            CHECK(forms::n14_c4(p) < 0.0);
        }
        CHECK(std::abs(forms::n13_c4(p) - (p - 1.0) / 4.0) < 1e-15);
        CHECK(std::abs(forms::n14_c4(p) - (p - 1.0) / 4.0) < 1e-15);
        CHECK(std::abs(forms::witness_c4(p) - forms::n12_c4(p)) < 1e-15);
        CHECK(std::abs(forms::witness_c4(p) - (-(p * p - 4.0 * p + 2.0) / 4.0)) < 1e-15);
    }
}

TEST_CASE("frozen spot values") {
    CHECK(forms::rotation_fidelity_c4h(0.37, 0.9, 1.7, 2.5) ==
          doctest::Approx(0.76930652569907443).epsilon(1e-14));
    CHECK(forms::pair_lambda14_c4h(0.45, 1.1, 0.6) ==
          doctest::Approx(0.18551345793283769).epsilon(1e-14));
    CHECK(forms::pair_lambda34_c4(0.3, 0.7 + 1.9) ==
          doctest::Approx(0.25259567219251733).epsilon(1e-14));
    CHECK(forms::n13_c4h(0.5) == doctest::Approx(-0.12990169529663675).epsilon(1e-14));
    // angle-independent pair forms
    CHECK(std::abs(forms::pair_fidelity_other_c4(0.45) - 0.25 * (0.45 - 2.0) * (0.45 - 2.0)) <
          1e-15);
    CHECK(std::abs(forms::pair_lambda_other_c4(0.45) -
                   0.5 * (0.45 * 0.45 - 4.0 * 0.45 + 2.0)) < 1e-15);
}

TEST_CASE("pair (3,4) fidelity coincides with the rotation fidelity") {
    for (double p : {0.0, 0.3, 0.8}) {
        for (double s : {0.0, 1.1, 4.0}) {
            CHECK(std::abs(forms::pair_fidelity34_c4(p, s) -
                           forms::rotation_fidelity_c4(p, s)) < 1e-14);
        }
    }
}

TEST_CASE("registry integrity") {
    const std::vector<forms::ClosedForm>& reg = forms::registry();
    CHECK(reg.size() == 21);
    std::set<std::string> names;
    for (const forms::ClosedForm& form : reg) {
        CHECK(names.insert(form.name).second);  // unique
        for (int slot : form.angle_slots) {
            CHECK(slot >= 1);
            CHECK(slot <= 4);
        }
        // evaluates to a finite number everywhere on a coarse grid
        for (int ip = 0; ip <= 4; ++ip) {
            const std::array<double, 4> theta = {0.9, 2.1, 3.3, 4.5};
            CHECK(std::isfinite(form.eval(ip / 4.0, theta)));
        }
        CHECK(&forms::form_by_name(form.name) == &form);
    }
    CHECK_THROWS(forms::form_by_name("not_a_form"));
}
