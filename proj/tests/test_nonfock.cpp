#include <doctest.h>

#include <cmath>

#include "loqs/fock.hpp"
#include "loqs/nonfock.hpp"
#include "loqs/util.hpp"

using namespace loqs;

namespace {

Matrix hadamard() {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

// Generalized Laguerre L_k^{(a)} for k <= 2.
double laguerre(int k, double a, double x) {
    switch (k) {
        case 0: return 1.0;
        case 1: return a + 1.0 - x;
        case 2: return 0.5 * x * x - (a + 2.0) * x + 0.5 * (a + 1.0) * (a + 2.0);
    }
    REQUIRE(false);
    return 0.0;
}

// <f| D(alpha) |s> for s <= 2 (test-side oracle for displaced Fock states).
cd displaced_fock_element(int f, int s, cd alpha) {
    if (f < s) return std::conj(displaced_fock_element(s, f, -alpha));
    const double x = std::norm(alpha);
    const double pref = std::exp(0.5 * (log_factorial(s) - log_factorial(f)) - 0.5 * x);
    return pref * std::pow(alpha, f - s) * laguerre(s, double(f - s), x);
}

}  // namespace

TEST_CASE("coherent amplitudes and overlaps") {
    CHECK(coherent_fock_amplitude(0, cd(0, 0)) == cd(1.0, 0.0));
    CHECK(coherent_fock_amplitude(3, cd(0, 0)) == cd(0.0, 0.0));
    const cd a(0.4, -0.3);
    // Direct small-n formula.
    const cd f2 = std::exp(-0.5 * std::norm(a)) * a * a / std::sqrt(2.0);
    CHECK(std::abs(coherent_fock_amplitude(2, a) - f2) < 1e-14);

    CHECK(std::abs(coherent_overlap(a, a) - cd(1.0, 0.0)) < 1e-14);
    const cd b(-0.1, 0.9);
    // |<a|b>|^2 = exp(-|a-b|^2)
    CHECK(std::norm(coherent_overlap(a, b)) ==
          doctest::Approx(std::exp(-std::norm(a - b))).epsilon(1e-12));

    // Coherent state normalization: sum_n |f_n|^2 = 1.
    double sum = 0.0;
    for (int n = 0; n < 60; ++n) sum += std::norm(coherent_fock_amplitude(n, cd(1.3, 0.4)));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("displaced single photon amplitudes") {
    CHECK(std::abs(displaced_one_photon_amplitude(1, cd(0, 0)) - cd(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(displaced_one_photon_amplitude(0, cd(0, 0))) < 1e-15);
    // Matches the Laguerre oracle.
    const cd a(0.37, 0.21);
    for (int n = 0; n < 8; ++n)
        CHECK(std::abs(displaced_one_photon_amplitude(n, a) - displaced_fock_element(n, 1, a)) <
              1e-13);
    // Unit norm.
    double sum = 0.0;
    for (int n = 0; n < 60; ++n) sum += std::norm(displaced_one_photon_amplitude(n, a));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent propagation") {
    Rng rng(71, 0);
    const ModeUnitary u = random_matrix(4, RandomKind::HaarUnitary, rng);

    const std::vector<cd> zeros(4, cd(0, 0));
    for (const cd& b : propagate_coherent(u, zeros)) CHECK(b == cd(0.0, 0.0));

    std::vector<cd> alphas{cd(0.2, 0.1), cd(-0.4, 0.3), cd(0.0, 0.9), cd(1.1, 0.0)};
    const std::vector<cd> beta = propagate_coherent(u, alphas);
    double ein = 0.0, eout = 0.0;
    for (int i = 0; i < 4; ++i) {
        ein += std::norm(alphas[i]);
        eout += std::norm(beta[i]);
    }
    CHECK(std::abs(ein - eout) < 1e-12);

    // Balanced splitter doubles the energy of the bright port for equal
    // inputs.
    const ModeUnitary h = ModeUnitary::unitary(hadamard());
    const std::vector<cd> eq{cd(0.5, 0.2), cd(0.5, 0.2)};
    const std::vector<cd> bh = propagate_coherent(h, eq);
    CHECK(std::abs(bh[0] - std::sqrt(2.0) * eq[0]) < 1e-14);
    CHECK(std::abs(bh[1]) < 1e-14);
}

TEST_CASE("cat amplitudes") {
    SUBCASE("pure coherent input factorizes (50 modes run instantly)") {
        std::vector<cd> alphas(50);
        for (int i = 0; i < 50; ++i) alphas[i] = cd(0.01 * i, -0.005 * i);
        const CoherentSuperposition st = CoherentSuperposition::coherent(alphas);
        // Permutation network keeps it a product of coherent amplitudes.
        Matrix perm = Matrix::Zero(50, 50);
        for (int i = 0; i < 50; ++i) perm(i, (i + 7) % 50) = 1.0;
        const ModeUnitary u = ModeUnitary::unitary(std::move(perm));
        FockConfiguration s(50, 0);
        s[0] = 1;
        s[12] = 2;
        const std::vector<cd> beta = propagate_coherent(u, alphas);
        cd expected(1.0, 0.0);
        for (int j = 0; j < 50; ++j) expected *= coherent_fock_amplitude(s[j], beta[j]);
        CHECK(std::abs(cat_amplitude(st, u, s) - expected) < 1e-14);
    }

    SUBCASE("vacuum projection of a vacuum state is 1") {
        const CoherentSuperposition st = CoherentSuperposition::cats(3, 0, cd(0.5, 0), true);
        const ModeUnitary id = ModeUnitary::unitary(Matrix::Identity(3, 3));
        CHECK(std::abs(cat_amplitude(st, id, {0, 0, 0}) - cd(1.0, 0.0)) < 1e-12);
    }

    SUBCASE("guard rejects exponential assignments") {
        CoherentSuperposition st = CoherentSuperposition::cats(21, 21, cd(0.3, 0), true);
        const ModeUnitary id = ModeUnitary::unitary(Matrix::Identity(21, 21));
        CHECK_THROWS_AS((void)cat_amplitude(st, id, FockConfiguration(21, 0)), SizeGuardError);
    }
}

TEST_CASE("odd-cat interference reproduces two-photon bunching as alpha -> 0") {
    const double alpha = 1e-3;
    const ModeUnitary h = ModeUnitary::unitary(hadamard());
    const CoherentSuperposition st = CoherentSuperposition::cats(2, 2, alpha, true);

    const cd g11 = cat_amplitude(st, h, {1, 1});
    const cd g20 = cat_amplitude(st, h, {2, 0});
    const cd g02 = cat_amplitude(st, h, {0, 2});
    CHECK(std::abs(g11) < 10.0 * alpha * alpha);
    CHECK(std::abs(g20 - cd(1.0 / std::sqrt(2.0), 0.0)) < 10.0 * alpha * alpha);
    CHECK(std::abs(g02 + cd(1.0 / std::sqrt(2.0), 0.0)) < 10.0 * alpha * alpha);

    CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cat_probability(st, h, {2, 0}) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("cat sampling converges to Fock sampling of the transposed network") {
    // The sampling formula indexes the network by output rows, so the
    // alpha -> 0 odd-cat limit lands on the Fock amplitudes of U^T; |gamma|^2
    // is unchanged for the symmetric two-mode cases.
    Rng rng(72, 0);
    const ModeUnitary u = random_matrix(3, RandomKind::HaarUnitary, rng);
    const ModeUnitary ut = ModeUnitary::unitary(u.entries.transpose());
    const double alpha = 1e-3;
    const CoherentSuperposition st = CoherentSuperposition::cats(3, 3, alpha, true);
    for (const auto& s :
         {FockConfiguration{1, 1, 1}, FockConfiguration{2, 1, 0}, FockConfiguration{0, 3, 0}}) {
        const cd cat = cat_amplitude(st, u, s);
        const cd fock = output_amplitude(ut, {1, 1, 1}, s);
        CHECK(std::abs(cat - fock) < 2e-5);
    }
}

TEST_CASE("cat state probabilities accumulate to 1 under a photon cutoff") {
    const double alpha = 0.8;
    const ModeUnitary h = ModeUnitary::unitary(hadamard());
    const CoherentSuperposition st = CoherentSuperposition::cats(2, 2, alpha, true);
    const int nmax = cat_fock_cutoff(std::sqrt(2.0) * alpha);
    double total = 0.0;
    for (int s1 = 0; s1 <= nmax; ++s1)
        for (int s2 = 0; s2 <= nmax; ++s2)
            total += cat_probability(st, h, {s1, s2});
    CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("odd-cat hardness bound") {
    // alpha^2 csch(alpha^2) -> 1 as alpha -> 0.
    CHECK(odd_cat_hardness_bound(1e-5, 3, 2.0).probability == doctest::Approx(1.0).epsilon(1e-8));

    // Cross-check against the f_n-based single-photon amplitude.
    const double alpha = 0.5;
    const int n = 4;
    const double a2 = alpha * alpha;
    const double norm = std::sqrt(2.0 * (1.0 - std::exp(-2.0 * a2)));
    const double gamma1 =
        (coherent_fock_amplitude(1, alpha) - coherent_fock_amplitude(1, -alpha)).real() / norm;
    CHECK(odd_cat_hardness_bound(alpha, n, 2.0).probability ==
          doctest::Approx(std::pow(gamma1, 2 * n)).epsilon(1e-10));

    // Exponential decay in n at fixed alpha.
    const double r1 = odd_cat_hardness_bound(0.7, 10, 2.0).probability /
                      odd_cat_hardness_bound(0.7, 9, 2.0).probability;
    const double r2 = odd_cat_hardness_bound(0.7, 20, 2.0).probability /
                      odd_cat_hardness_bound(0.7, 19, 2.0).probability;
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));
    CHECK(r1 < 1.0);

    CHECK(odd_cat_hardness_bound(0.1, 4, 2.0).exceeds_poly);
    CHECK_FALSE(odd_cat_hardness_bound(2.5, 40, 1.0).exceeds_poly);
}

TEST_CASE("SPACS statistics") {
    SUBCASE("alpha = 0 is a pure Fock state") {
        const SpacsStats st = spacs_stats(5, 0.0);
        CHECK(st.p[5] == 1.0);
        for (int i = 0; i < 5; ++i) CHECK(st.p[i] == 0.0);
    }

    SUBCASE("binomial completeness is exact") {
        for (double a2 : {0.01, 0.3, 2.0, 50.0}) {
            const SpacsStats st = spacs_stats(12, a2);
            double sum = 0.0;
            for (double p : st.p) sum += p;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        }
    }

    SUBCASE("P_n at |alpha|^2 = 1/n approaches 1/e") {
        const int n = 10000;
        const SpacsStats st = spacs_stats(n, 1.0 / n);
        CHECK(std::abs(st.p[n] - 1.0 / M_E) / (1.0 / M_E) < 0.01);
    }

    SUBCASE("easy regime detects the vacuum almost surely") {
        const int n = 10000;
        const SpacsStats st = spacs_stats(n, double(n) * n);
        CHECK(st.p[0] > 0.999);
    }

    SUBCASE("regimes and monotonicity") {
        const int n = 10;
        CHECK(spacs_stats(n, 1.0 / n).regime == SamplingRegime::Hard);
        CHECK(spacs_stats(n, double(n) * n).regime == SamplingRegime::Easy);
        CHECK(spacs_stats(n, 1.0).regime == SamplingRegime::Intermediate);

        double prev_pn = 1.1, prev_p0 = -0.1;
        for (double a2 : {0.0, 0.1, 0.5, 2.0, 10.0}) {
            const SpacsStats st = spacs_stats(n, a2);
            CHECK(st.p[n] < prev_pn);
            CHECK(st.p[0] >= prev_p0);
            prev_pn = st.p[n];
            prev_p0 = st.p[0];
        }
    }
}

TEST_CASE("PASSV parity sampling") {
    SUBCASE("permutation networks route the operators deterministically") {
        Matrix perm = Matrix::Zero(4, 4);
        perm(0, 2) = 1.0;
        perm(1, 0) = 1.0;
        perm(2, 3) = 1.0;
        perm(3, 1) = 1.0;
        const ModeUnitary o = ModeUnitary::orthogonal(std::move(perm));
        // Inputs on modes 1, 2 land on modes 3, 1.
        std::vector<Parity> pattern{Parity::Odd, Parity::Even, Parity::Odd, Parity::Even};
        CHECK(passv_sample(o, 2, pattern) == doctest::Approx(1.0).epsilon(1e-12));
        std::vector<Parity> wrong{Parity::Odd, Parity::Odd, Parity::Even, Parity::Even};
        CHECK(passv_sample(o, 2, wrong) == doctest::Approx(0.0));
    }

    SUBCASE("two-mode balanced case reproduces the bunching image") {
        const ModeUnitary o = ModeUnitary::orthogonal(hadamard());
        const auto dist = passv_parity_distribution(o, 2);
        double even_even = -1.0, odd_odd = -1.0;
        for (const auto& [pattern, prob] : dist) {
            if (pattern == std::vector<Parity>{Parity::Even, Parity::Even}) even_even = prob;
            if (pattern == std::vector<Parity>{Parity::Odd, Parity::Odd}) odd_odd = prob;
        }
        CHECK(even_even == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(odd_odd) < 1e-12);
    }

    SUBCASE("squeezing drops out bit-identically") {
        Rng rng(73, 0);
        const ModeUnitary o = random_matrix(4, RandomKind::HaarOrthogonal, rng);
        std::vector<Parity> pattern{Parity::Odd, Parity::Even, Parity::Odd, Parity::Even};
        const double p0 = passv_sample(o, 2, pattern, 0.0);
        const double p1 = passv_sample(o, 2, pattern, 0.5);
        const double p2 = passv_sample(o, 2, pattern, 1.0);
        CHECK(p0 == p1);
        CHECK(p1 == p2);
    }

    SUBCASE("odd-count mismatch is rejected") {
        const ModeUnitary o = ModeUnitary::orthogonal(hadamard());
        CHECK_THROWS_AS((void)passv_sample(o, 2, {Parity::Odd, Parity::Even}),
                        InconsistencyError);
    }

    SUBCASE("complex networks are rejected") {
        Matrix u(2, 2);
        u << cd(0, 1), cd(0, 0), cd(0, 0), cd(0, -1);
        ModeUnitary m{u, ModeUnitary::Kind::Orthogonal};
        CHECK_THROWS_AS((void)passv_sample(m, 1, {Parity::Odd, Parity::Even}), ParameterError);
    }
}

TEST_CASE("displaced-Fock sampling reduces to Fock sampling exactly") {
    // LHS: brute Fock-basis expansion of U D(a_1) a_1^+ D(a_2) a_2^+ |0>.
    // RHS: counter-displaced form prod_j D(beta_j) applied to the Fock-sampled
    // state, with beta = U^T alpha.
    Rng rng(74, 0);
    const ModeUnitary u = random_matrix(3, RandomKind::HaarUnitary, rng);
    const std::vector<cd> alpha{cd(0.31, 0.2), cd(-0.24, 0.11), cd(0.0, 0.0)};

    std::vector<cd> beta(3, cd(0, 0));
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) beta[j] += u.entries(i, j) * alpha[i];

    const FockConfiguration fock_in{1, 1, 0};
    const auto sector = enumerate_configurations(3, 2);

    for (const FockConfiguration& f :
         {FockConfiguration{0, 0, 0}, FockConfiguration{1, 0, 0}, FockConfiguration{1, 1, 0},
          FockConfiguration{2, 0, 1}, FockConfiguration{1, 1, 1}, FockConfiguration{0, 2, 1}}) {
        const int total = total_photons(f);

        cd lhs(0.0, 0.0);
        for (int k1 = 0; k1 <= total; ++k1) {
            const int k2 = total - k1;
            const cd c =
                displaced_one_photon_amplitude(k1, alpha[0]) *
                displaced_one_photon_amplitude(k2, alpha[1]);
            if (std::abs(c) == 0.0) continue;
            lhs += c * output_amplitude(u, {k1, k2, 0}, f);
        }

        cd rhs(0.0, 0.0);
        for (const auto& s : sector) {
            cd term = output_amplitude(u, fock_in, s);
            for (int j = 0; j < 3; ++j) term *= displaced_fock_element(f[j], s[j], beta[j]);
            rhs += term;
        }
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}
