#include <doctest.h>

#include <cmath>

#include "loqs/permanent.hpp"
#include "loqs/qufti.hpp"

using namespace loqs;

namespace {

// Independent matrix-product oracle: U = V Phi V^dag with explicit Fourier
// matrices, no closed entrywise form.
Matrix qufti_product_oracle(int n, double phi) {
    const cd i(0.0, 1.0);
    Matrix v(n, n);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
            v(j - 1, k - 1) =
                std::exp(-2.0 * i * M_PI * double(j) * double(k) / double(n)) / std::sqrt(double(n));
    Matrix phi_m = Matrix::Zero(n, n);
    for (int l = 0; l < n; ++l) phi_m(l, l) = std::exp(i * double(l) * phi);
    return v * phi_m * v.adjoint();
}

}  // namespace

TEST_CASE("qufti unitary closed form") {
    SUBCASE("n = 1 is the trivial phase-free mode") {
        const ModeUnitary u = qufti_unitary(1, 0.83);
        CHECK(std::abs(u.entries(0, 0) - cd(1.0, 0.0)) < 1e-12);
        CHECK(std::abs(conjectured_permanent(1, 0.83) - cd(1.0, 0.0)) < 1e-15);
    }

    SUBCASE("phi = 0 collapses to the identity") {
        for (int n : {2, 3, 5, 8}) {
            const ModeUnitary u = qufti_unitary(n, 0.0);
            CHECK((u.entries - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    SUBCASE("matches the explicit matrix product") {
        for (double phi : {0.7, 0.1, 2.9}) {
            const ModeUnitary u = qufti_unitary(3, phi);
            CHECK((u.entries - qufti_product_oracle(3, phi)).cwiseAbs().maxCoeff() < 1e-12);
        }
        // Near a removable singularity (phi ~ 2 pi (j-k)/n) the product route
        // takes over; values must still agree.
        const double phi_sing = 2.0 * M_PI / 3.0 + 1e-10;
        const ModeUnitary u = qufti_unitary(3, phi_sing);
        CHECK((u.entries - qufti_product_oracle(3, phi_sing)).cwiseAbs().maxCoeff() < 1e-9);
    }

    SUBCASE("unitary for many n and phi") {
        for (int n : {2, 4, 7, 11}) {
            for (double phi : {0.3, 1.7, 4.0}) {
                const ModeUnitary u = qufti_unitary(n, phi);
                CHECK((u.entries.adjoint() * u.entries - Matrix::Identity(n, n))
                          .cwiseAbs()
                          .maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("conjectured permanent closed forms at small n") {
    for (double phi : {0.0, 0.4, 1.3, 3.0}) {
        const cd expected2 = std::exp(cd(0.0, phi)) * std::cos(phi);
        CHECK(std::abs(conjectured_permanent(2, phi) - expected2) < 1e-14);

        const cd e3 = std::exp(cd(0.0, 3.0 * phi));
        const cd expected3 = (2.0 + e3) * (1.0 + 2.0 * e3) / 9.0;
        CHECK(std::abs(conjectured_permanent(3, phi) - expected3) < 1e-14);
    }
}

TEST_CASE("conjecture agrees with Ryser up to n = 10") {
    for (int n = 1; n <= 10; ++n) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double phi = 2.0 * M_PI * k / 20.0;
            const cd ryser = permanent_ryser(qufti_unitary(n, phi).entries);
            worst = std::max(worst, std::abs(ryser - conjectured_permanent(n, phi)));
        }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("coincidence probability routes agree across the crossover") {
    for (double phi : {0.05, 0.31}) {
        const double via_ryser = coincidence_probability({5, phi, 0.0}, 8);
        const double via_product = coincidence_probability({5, phi, 0.0}, 3);
        CHECK(via_ryser == doctest::Approx(via_product).epsilon(1e-12));
    }
}

TEST_CASE("signal properties") {
    SUBCASE("phi = 0 is a stationary point with unit signal") {
        const QuftiSignal s = signal_and_sensitivity({4, 0.0, 0.0});
        CHECK(s.p == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.dp_dphi == 0.0);
        CHECK(s.degenerate());
        CHECK(std::isnan(s.delta_phi));
    }

    SUBCASE("small-angle curvature k(2) = 1") {
        const double phi = 1e-3;
        const QuftiSignal s = signal_and_sensitivity({2, phi, 0.0});
        CHECK((1.0 - s.p) / (phi * phi) == doctest::Approx(1.0).epsilon(1e-4));
    }

    SUBCASE("sensitivity matches a finite-difference slope") {
        const double phi = 0.05, h = 1e-5;
        const QuftiSignal s = signal_and_sensitivity({4, phi, 0.0});
        const double dp_fd = (coincidence_probability({4, phi + h, 0.0}) -
                              coincidence_probability({4, phi - h, 0.0})) /
                             (2.0 * h);
        const double delta_fd = std::sqrt(s.p - s.p * s.p) / std::abs(dp_fd);
        CHECK(std::abs(s.delta_phi - delta_fd) / delta_fd < 1e-6);
    }

    SUBCASE("P is periodic with period 2 pi / n and stays in [0, 1]") {
        const int n = 5;
        for (double phi : {0.1, 0.45, 0.9}) {
            const double p1 = coincidence_probability({n, phi, 0.0});
            const double p2 = coincidence_probability({n, phi + 2.0 * M_PI / n, 0.0});
            CHECK(p1 == doctest::Approx(p2).epsilon(1e-10));
            CHECK(p1 >= 0.0);
            CHECK(p1 <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("small-angle sensitivity and ORC baselines") {
    CHECK(small_angle_sensitivity(2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(small_angle_sensitivity(3) == doctest::Approx(0.25).epsilon(1e-15));

    const OrcBaselines b2 = orc_baselines(2);
    CHECK(b2.resources == doctest::Approx(2.0));
    CHECK(b2.snl == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(b2.hl == doctest::Approx(0.5).epsilon(1e-15));

    for (int n = 2; n <= 30; ++n) {
        const OrcBaselines b = orc_baselines(n);
        const double dphi = small_angle_sensitivity(n);
        CHECK(dphi >= b.hl - 1e-15);
        CHECK(dphi <= b.snl + 1e-15);
    }
}

TEST_CASE("dephasing contracts the oscillation") {
    const int n = 4;
    double pmax = 0.0, pmin = 1.0, qmax = 0.0, qmin = 1.0;
    for (int k = 0; k <= 200; ++k) {
        const double phi = 2.0 * M_PI * k / 200.0;
        const double p = coincidence_probability({n, phi, 0.0});
        const double q = coincidence_probability({n, phi, 0.02});
        pmax = std::max(pmax, p);
        pmin = std::min(pmin, p);
        qmax = std::max(qmax, q);
        qmin = std::min(qmin, q);
    }
    CHECK(qmax <= pmax + 1e-12);
    CHECK(qmin >= pmin - 1e-12);
    CHECK(qmax - qmin < pmax - pmin);
}

TEST_CASE("sensitivity with dephasing keeps the product-rule slope") {
    const double phi = 0.07, h = 1e-5, dvar = 0.01;
    const QuftiSignal s = signal_and_sensitivity({5, phi, dvar});
    const double dp_fd = (coincidence_probability({5, phi + h, dvar}) -
                          coincidence_probability({5, phi - h, dvar})) /
                         (2.0 * h);
    CHECK(s.dp_dphi == doctest::Approx(std::abs(dp_fd)).epsilon(1e-6));
}
