#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qig/charts.hpp"
#include "qig/metric.hpp"

using namespace qig;

namespace {

double rel_dev(const RMat& a, const RMat& b) {
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

}  // namespace

TEST_CASE("differentials: linearity, tracelessness, analytic escort check") {
    const auto bloch = bloch_qubit();
    // radial derivative pointing along z at th1 = th2 = pi/2
    const auto d = numeric_differential(bloch, {0.4, M_PI / 2, M_PI / 2}, 0);
    CHECK(d.d(0, 0).real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(d.d(1, 1).real() == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK_FALSE(d.one_sided);

    // unit-trace family: every differential is traceless
    const auto esc = escort_qubit();
    for (int i = 0; i < 4; ++i) {
        const auto di = numeric_differential(esc, {0.55, 1.2, 2.2, 1.7}, i);
        CHECK(std::abs(di.d.trace().real()) < 1e-9);
        CHECK(std::abs(di.d.trace().imag()) < 1e-12);
    }

    // d rho / dq at q=1 for a diagonal state: rho o (log lam - <log lam>)
    const double r = 0.6;
    const ParamPoint p{r, M_PI / 2, M_PI / 2, 1.0};  // Bloch vector along z
    const auto dq = numeric_differential(esc, p, 3);
    const double lp = 0.5 * (1 + r), lm = 0.5 * (1 - r);
    const double mean = lp * std::log(lp) + lm * std::log(lm);
    CHECK(dq.d(0, 0).real() ==
          doctest::Approx(lp * (std::log(lp) - mean) / 1.0).epsilon(1e-6));
    CHECK(dq.d(1, 1).real() ==
          doctest::Approx(lm * (std::log(lm) - mean) / 1.0).epsilon(1e-6));
}

TEST_CASE("step robustness of the stencil derivative") {
    const auto esc = escort_qubit();
    const ParamPoint p{0.45, 1.0, 2.0, 1.6};
    const auto g1 = bures_tensor(esc, p);
    // recompute with halved base step through the low-level differential
    std::vector<CMat> dd;
    for (int i = 0; i < 4; ++i) dd.push_back(numeric_differential(esc, p, i, 0.5e-4 * 0.45).d);
    std::vector<CMat> dd2;
    for (int i = 0; i < 4; ++i) dd2.push_back(numeric_differential(esc, p, i, 0.25e-4 * 0.45).d);
    for (int i = 0; i < 4; ++i)
        CHECK((dd[i] - dd2[i]).cwiseAbs().maxCoeff() < 1e-7);
    (void)g1;
}

TEST_CASE("closed-form bloch Bures equals the numeric tensor") {
    const ParamPoint p{0.5, 1.0, 2.0};
    const auto num = bures_tensor(bloch_qubit(), p);
    const auto cf = closed_form_tensor(ClosedForm::bloch_bures, p);
    CHECK(rel_dev(num.g, cf.g) < 1e-6);
}

TEST_CASE("extended Bures: closed form matches numeric, q=1 reduction, nullity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.15, 0.85);
    const auto esc = escort_qubit();
    for (int k = 0; k < 10; ++k) {
        const ParamPoint p{uni(rng), 0.4 + 2.2 * uni(rng), 0.5 + 5.0 * uni(rng),
                           0.6 + 1.8 * uni(rng)};
        const auto num = bures_tensor(esc, p);
        const auto cf = closed_form_tensor(ClosedForm::extended_bures, p);
        CHECK(rel_dev(num.g, cf.g) < 1e-6);
        CHECK(volume_element(cf).null_flag);
        CHECK(volume_element(num).null_flag);
    }
    // q=1 slice agrees with the dedicated q=1 form
    const ParamPoint p1{0.37, 1.3, 0.8, 1.0};
    CHECK(rel_dev(closed_form_tensor(ClosedForm::extended_bures, p1).g,
                  closed_form_tensor(ClosedForm::extended_bures_q1, p1).g) < 1e-10);
    // truncation zeroes exactly the (r, q) entry
    const auto t = closed_form_tensor(ClosedForm::extended_bures_q1_truncated, p1);
    CHECK(t.g(0, 3) == 0.0);
    CHECK_FALSE(volume_element(t).null_flag);
}

TEST_CASE("qutrit closed form matches numeric; 5D tangential formula") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto ch = qutrit_v();
    for (int k = 0; k < 10; ++k) {
        const double v = 0.3 + 0.6 * uni(rng);
        const double r = v * (0.15 + 0.7 * uni(rng));
        const ParamPoint p{v, r, 0.5 + 2.0 * uni(rng), 0.4 + 5.0 * uni(rng)};
        const auto num = bures_tensor(ch, p);
        const auto cf = closed_form_tensor(ClosedForm::qutrit_bures, p);
        CHECK(rel_dev(num.g, cf.g) < 1e-6);
    }
    // q-extension tangential coefficient against the numeric 5-param tensor;
    // the formula multiplies dn^2 = r^2 dOmega^2, so the th1-th1 entry gets r^2
    const auto chq = qutrit_v_q();
    for (double q : {0.8, 1.0, 2.2}) {
        const ParamPoint p{0.7, 0.35, 1.1, 2.0, q};
        const auto num = bures_tensor(chq, p);
        const double want = 0.35 * 0.35 * qutrit_q_tangential(0.7, 0.35, q);
        CHECK(num.g(2, 2) == doctest::Approx(want).epsilon(1e-5));
    }
}

TEST_CASE("AR tensors: q=1 closed form, volume elements, general-q element") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto ch3 = ar_bell();
    for (int k = 0; k < 6; ++k) {
        const double s = 1.0 + 6.5 * uni(rng);
        const double b = (0.1 + 0.8 * uni(rng)) * s / (2.0 * std::sqrt(2.0));
        const ParamPoint p{b, s, 1.0};
        const auto num = bures_tensor(ch3, p);
        const auto cf = closed_form_tensor(ClosedForm::ar_q1, {b, s, 1.0});
        CHECK(rel_dev(num.g, cf.g) < 1e-6);
        // 2x2 (b, sigma2) block's sqrt-det equals the printed area elements
        const auto g2 = bures_tensor(ar_bell_at(1.0), {b, s});
        CHECK(std::sqrt(g2.g.determinant()) ==
              doctest::Approx(ar_volume_element_q1(b, s)).epsilon(1e-8));
        CHECK(ar_volume_element(b, s, 1.0) ==
              doctest::Approx(ar_volume_element_q1(b, s)).epsilon(1e-12));
    }
    // dV at general q vs the numeric fixed-q tensor at 20 random points
    for (int k = 0; k < 20; ++k) {
        const double q = 0.4 + 2.4 * uni(rng);
        const double s = 1.0 + 6.5 * uni(rng);
        const double b = (0.1 + 0.8 * uni(rng)) * s / (2.0 * std::sqrt(2.0));
        const auto g2 = bures_tensor(ar_bell_at(q), {b, s});
        CHECK(std::sqrt(g2.g.determinant()) ==
              doctest::Approx(ar_volume_element(b, s, q)).epsilon(1e-6));
    }
    // trivariate C+D element reduces to the AR element at alpha=1 and matches
    // the numeric alpha-model tensor
    for (int k = 0; k < 6; ++k) {
        const double s = 1.0 + 6.0 * uni(rng);
        const double b = (0.1 + 0.8 * uni(rng)) * s / (2.0 * std::sqrt(2.0));
        CHECK(trivariate_bures_element(b, s, 1.0) ==
              doctest::Approx(ar_volume_element_q1(b, s)).epsilon(1e-12));
        const auto g2 = bures_tensor(jaynes_alpha(2.0), {b, s});
        CHECK(std::sqrt(g2.g.determinant()) ==
              doctest::Approx(trivariate_bures_element(b, s, 2.0)).epsilon(1e-6));
    }
}

TEST_CASE("volume element flags") {
    MetricTensor id3;
    id3.g = RMat::Identity(3, 3);
    id3.coords = {"a", "b", "c"};
    const auto v = volume_element(id3);
    CHECK(v.value == doctest::Approx(1.0));
    CHECK_FALSE(v.null_flag);
}

TEST_CASE("degenerate-state guard fires near the boundary, unguarded path stays finite") {
    const auto ch = ar_bell_at(1.0);
    const ParamPoint edge{0.1, 8.0 - 1e-11};  // p3, p4 ~ 6e-13
    CHECK_THROWS_AS(bures_tensor(ch, edge), DegenerateState);
    TensorOptions opt;
    opt.guard = false;
    const auto g = bures_tensor(ch, edge, opt);
    CHECK(std::isfinite(volume_element(g).value));
    CHECK(volume_element(g).value > 1e3);  // diverging element
}

TEST_CASE("truncated extended-Bures marginal: ball integral and q-antiderivative") {
    // d/dq of the antiderivative equals the 2D (q, r) marginal integrand
    const double r = 0.55, q = 1.3, h = 1e-5;
    const double lhs = (bures_trunc_q_antiderivative(r, q + h) -
                        bures_trunc_q_antiderivative(r, q - h)) /
                       (2.0 * h);
    const double rhs = 4.0 * M_PI * bures_trunc_element(r, q);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
}
