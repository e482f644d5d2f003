#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "qig/charts.hpp"

using namespace qig;

namespace {

const double kC = 2.0 * std::sqrt(2.0);

// 2x2 linear solve oracle for the q=1 Bell weights given (b, sigma2)
Eigen::Vector4d solve_moments(double b, double s) {
    // p1 - p4 = b/(2 sqrt2),  p1 + p4 = s/8
    Eigen::Matrix2d A;
    A << 1, -1, 1, 1;
    Eigen::Vector2d rhs(b / kC, s / 8.0);
    Eigen::Vector2d x = A.colPivHouseholderQr().solve(rhs);
    const double rest = 0.5 * (1.0 - x(0) - x(1));
    return {x(0), rest, rest, x(1)};
}

ParamPoint random_feasible(const FamilyChart& ch, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        ParamPoint p(ch.dim());
        for (int i = 0; i < ch.dim(); ++i) {
            auto [lo, hi] = ch.bounding_box[i];
            if (ch.param_names[i] == "q") hi = std::min(hi, 4.0);
            p[i] = lo + uni(rng) * (hi - lo);
        }
        if (ch.feasible(p)) return p;
    }
    throw std::runtime_error("no feasible point");
}

}  // namespace

TEST_CASE("fully mixed state at the origin") {
    const auto rho = build_state(bloch_qubit(), {0.0, 1.0, 2.0});
    CHECK((rho.m - 0.5 * CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("AR weights at q=1: symmetric and moment-solve oracle") {
    const auto w0 = ar_weights(0.0, 4.0, 1.0);
    for (int i = 0; i < 4; ++i) CHECK(w0(i) == doctest::Approx(0.25));

    const auto w = ar_weights(std::sqrt(2.0), 6.0, 1.0);
    const auto oracle = solve_moments(std::sqrt(2.0), 6.0);
    for (int i = 0; i < 4; ++i) CHECK(w(i) == doctest::Approx(oracle(i)).epsilon(1e-12));
    CHECK(w(0) == doctest::Approx(0.625));
    CHECK(w(1) == doctest::Approx(0.125));
}

TEST_CASE("AR eigenvalue degeneracy: two equal eigenvalues (8-s)/16 at q=1") {
    const auto rho = build_state(ar_bell(), {0.9, 5.0, 1.0});
    const auto es = eigensystem(rho);
    int count = 0;
    for (int i = 0; i < 4; ++i)
        if (std::abs(es.values(i) - 3.0 / 16.0) < 1e-12) ++count;
    CHECK(count == 2);
}

TEST_CASE("escort chart reduces to bloch at q=1 and converges as q->1") {
    const ParamPoint p{0.63, 1.1, 2.7};
    const CMat base = bloch_qubit().build_raw(p);
    const auto esc = escort_qubit();
    CHECK((esc.build_raw({0.63, 1.1, 2.7, 1.0}) - base).cwiseAbs().maxCoeff() < 1e-14);
    for (double q : {1.0 - 1e-6, 1.0 + 1e-6}) {
        CHECK((esc.build_raw({0.63, 1.1, 2.7, q}) - base).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("jaynes alpha=1 equals AR q=1") {
    const auto tri = jaynes_alpha(1.0);
    for (auto [b, s] : {std::pair{0.5, 4.0}, {1.2, 6.3}, {0.0, 2.0}}) {
        const CMat lhs = tri.build_raw({b, s});
        const CMat rhs = ar_bell_at(1.0).build_raw({b, s});
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("tlb weights sum to one identically") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-3.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double x = uni(rng), y = uni(rng), z = uni(rng);
        CHECK(tlb_weights(x, y, z).sum() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("reparameterization q=1/2 -> q=1: map, states, fixed point") {
    // b = 0 slice of the printed rational map
    for (double s : {1.0, 3.0, 6.0}) {
        const auto [b1, s1] = reparameterize_ar(0.0, s);
        CHECK(b1 == doctest::Approx(0.0));
        CHECK(s1 == doctest::Approx(4.0 * s * s / (s * s - 8.0 * s + 32.0)));
    }
    // entrywise state equality
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const double s = 0.3 + 7.4 * uni(rng);
        const double b = 0.97 * uni(rng) * s / kC;
        const auto [b1, s1] = reparameterize_ar(b, s);
        const CMat lhs = bell_diagonal(ar_weights(b, s, 0.5));
        const CMat rhs = bell_diagonal(ar_weights(b1, s1, 1.0));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
    // interior fixed point by 1D bisection on s (b = 0 symmetry axis)
    double lo = 3.0, hi = 6.0;
    auto gap = [](double s) { return reparameterize_ar(0.0, s).second - s; };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap(lo) * gap(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double sfix = 0.5 * (lo + hi);
    CHECK(sfix == doctest::Approx(4.0).epsilon(1e-10));
    const auto [bf, sf] = reparameterize_ar(0.0, sfix);
    CHECK((bell_diagonal(ar_weights(0.0, sfix, 0.5)) -
           bell_diagonal(ar_weights(bf, sf, 1.0)))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
}

TEST_CASE("property: all charts produce valid states on feasible points") {
    std::mt19937_64 rng(2026);
    for (const auto& ch : {bloch_qubit(), escort_qubit(), qutrit_v(), qutrit_v_q(), ar_bell(),
                           jaynes_alpha(2.0), tlb(), tlb_escort(), tlb_angles()}) {
        for (int k = 0; k < 1000; ++k) {
            const ParamPoint p = random_feasible(ch, rng);
            const CMat m = ch.build_raw(p);
            CAPTURE(ch.family_id);
            REQUIRE(is_hermitian(m, 1e-12));
            REQUIRE(std::abs(m.trace().real() - 1.0) < 1e-12);
            Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
            REQUIRE(es.eigenvalues().minCoeff() >= -1e-10);
        }
    }
}

TEST_CASE("chart errors: outside box and infeasible") {
    CHECK_THROWS_AS(build_state(bloch_qubit(), {1.5, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(build_state(qutrit_v(), {0.3, 0.5, 1.0, 1.0}), InfeasiblePoint);
    CHECK_THROWS_AS(reparameterize_ar(2.0, 1.0), InfeasiblePoint);
}
