#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "qig/regions.hpp"

using namespace qig;

namespace {

const double kRt2 = std::sqrt(2.0);
const double kC = 2.0 * kRt2;

}  // namespace

TEST_CASE("generic integrate: unit square and TLB tetrahedron coordinate volume") {
    Region square;
    square.box = {{0, 1}, {0, 1}};
    square.inside = [](const ParamPoint&) { return true; };
    const auto one = integrate(square, [](const ParamPoint&) { return 1.0; }, 1e-10);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-9));

    // simplex-volume determinant oracle: vertices (1,1,1),(1,1,-3),(1,-3,1),(-3,1,1)
    Eigen::Matrix3d E;
    E << 0, 0, -4, 0, -4, 0, -4, 0, 0;
    const double oracle = std::abs(E.determinant()) / 6.0;
    CHECK(oracle == doctest::Approx(32.0 / 3.0));

    const auto region = region_for(tlb(), Predicate::feasible);
    const auto vol = integrate(region, [](const ParamPoint&) { return 1.0; }, 1e-7);
    CHECK(vol.value == doctest::Approx(32.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("trivariate HS element is the printed constant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (double alpha : {0.5, 1.0, 2.0, 3.0, -2.0}) {
        const auto ch = jaynes_alpha(alpha);
        const double want = 1.0 / (32.0 * std::abs(alpha * (1.0 + alpha)));
        for (int k = 0; k < 10; ++k) {
            const double s = 0.5 + 7.0 * uni(rng);
            const double b = 0.9 * uni(rng) * s / kC;
            CHECK(metric_element(ch, MetricId::hs, {b, s}) ==
                  doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("bivariate fixed-sigma2 element is constant and matches the HS total") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto ch = jaynes_alpha(alpha);
        const double e1 = std::sqrt(hs_tensor(ch, {0.2, 2.0}).g(0, 0));
        const double e2 = std::sqrt(hs_tensor(ch, {1.5, 7.0}).g(0, 0));
        CHECK(e1 == doctest::Approx(e2).epsilon(1e-12));
        CHECK(e1 * kC == doctest::Approx(bivariate_hs_total(alpha)).epsilon(1e-12));
    }
}

TEST_CASE("closed-form separability probabilities: branch values") {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    // trivariate
    CHECK(closed_form_sepprob(CfModel::trivariate_alpha, 2.0) == doctest::Approx(5.0 / 8.0));
    CHECK(closed_form_sepprob(CfModel::trivariate_alpha, -1.0) == 0.0);
    CHECK(closed_form_sepprob(CfModel::trivariate_alpha, 0.0) == 0.0);
    CHECK(closed_form_sepprob(CfModel::trivariate_alpha, 0.5) == doctest::Approx(9.0 / 32.0));
    // printed isolated-point values coincide with the continuous limits
    CHECK(closed_form_sepprob(CfModel::trivariate_alpha, -kRt2) ==
          doctest::Approx((5.0 / 8.0) * (-kRt2) * (1.0 - kRt2)));
    CHECK(closed_form_sepprob(CfModel::trivariate_alpha, g) ==
          doctest::Approx(-0.125 * (std::sqrt(5.0) - 5.0) * g * (g + 1.0)));
    // large-alpha limit 3/4
    CHECK(closed_form_sepprob(CfModel::trivariate_alpha, 1e9) == doctest::Approx(0.75));
    CHECK(closed_form_sepprob(CfModel::trivariate_alpha, -1e9) ==
          doctest::Approx(0.75).epsilon(1e-8));
    // bivariate
    CHECK(closed_form_sepprob(CfModel::bivariate_alpha, 1.0) == doctest::Approx(kRt2 - 1.0));
    CHECK(closed_form_sepprob(CfModel::bivariate_alpha, 0.0) == 0.0);
    CHECK(closed_form_sepprob(CfModel::bivariate_alpha, -0.7) == 0.0);
    CHECK(closed_form_sepprob(CfModel::bivariate_alpha, -1.2) == doctest::Approx(0.2));
    CHECK(closed_form_sepprob(CfModel::bivariate_alpha, -2.0) ==
          doctest::Approx(std::sqrt(8.0) - kRt2 - 1.0));
    CHECK(closed_form_sepprob(CfModel::bivariate_alpha, 1e9) ==
          doctest::Approx(0.5).epsilon(1e-8));
    // continuity across the bivariate cut (1 - 2 sqrt 7)/3
    const double cut = (1.0 - 2.0 * std::sqrt(7.0)) / 3.0;
    CHECK(closed_form_sepprob(CfModel::bivariate_alpha, cut - 1e-9) ==
          doctest::Approx(closed_form_sepprob(CfModel::bivariate_alpha, cut + 1e-9))
              .epsilon(1e-6));
}

TEST_CASE("AR q=1 HS volumes are the exact constants") {
    const auto sp = sep_probability(ModelId::ar_bell, MetricId::hs, 1.0, 1e-7);
    CHECK(sp.total.value == doctest::Approx(1.0 / (4.0 * kRt2)).epsilon(1e-6));
    CHECK(sp.separable.value == doctest::Approx(1.0 / (8.0 * kRt2)).epsilon(1e-6));
    CHECK(sp.prob == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(sp.separable.value <= sp.total.value);
}

TEST_CASE("metric independence at q=1: Wigner-Yanase equals Bures volumes") {
    const auto wy = total_volume(ModelId::ar_bell, MetricId::wigner_yanase, 1.0, 1e-5);
    CHECK(wy.value == doctest::Approx(M_PI / 4.0).epsilon(2e-4));
}

TEST_CASE("change of variables: q=1/2 element equals the pushforward of q=1") {
    // |J| * dV_{q=1}(T(b,s)) == dV_{q=1/2}(b,s), T = reparameterize_ar
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < 12; ++k) {
        const double s = 0.8 + 6.5 * uni(rng);
        const double b = 0.85 * uni(rng) * s / kC;
        const double h = 1e-6;
        const auto [b1, s1] = reparameterize_ar(b, s);
        const auto [bp, sp] = reparameterize_ar(b + h, s);
        const auto [bm, sm] = reparameterize_ar(b - h, s);
        const auto [bq, sq] = reparameterize_ar(b, s + h);
        const auto [br, sr] = reparameterize_ar(b, s - h);
        const double J = ((bp - bm) * (sq - sr) - (bq - br) * (sp - sm)) / (4.0 * h * h);
        const double lhs = std::abs(J) * ar_volume_element_q1(b1, s1);
        const double rhs = ar_volume_element(b, s, 0.5);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-4));
    }
}

TEST_CASE("scan: probabilities carry errors and respect sep <= total") {
    const auto rows = scan(ModelId::trivariate, MetricId::hs, {1.5, 2.0, 2.5}, 1e-4);
    for (const auto& r : rows) {
        CHECK(std::isfinite(r.result.prob));
        CHECK(r.result.separable.value <= r.result.total.value + 1e-12);
        const double cf = closed_form_sepprob(CfModel::trivariate_alpha, r.param);
        CHECK(std::abs(r.result.prob - cf) < 1e-3);
    }
    const auto csv = scan_csv(rows);
    CHECK(csv.find("param,metric,total") == 0);
}

TEST_CASE("degenerate total raises") {
    CHECK_THROWS_AS(
        sep_probability(ModelId::bivariate, MetricId::bures, 1.0, 1e-6),
        DomainError);  // bures is not defined for the bivariate convention
}

TEST_CASE("monte carlo integrates a smooth function over a box") {
    McOptions opt;
    opt.seed = 4;
    opt.n_samples = 400000;
    const auto r = integrate_mc(
        [](const std::vector<double>& x) { return x[0] * x[1] * x[2] * x[3]; },
        {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, opt);
    CHECK(std::abs(r.value - 1.0 / 16.0) <= std::max(r.abs_error, 1e-3));
    CHECK(r.method == "monte_carlo");
}
