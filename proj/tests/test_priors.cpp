#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qig/metric.hpp"
#include "qig/priors.hpp"
#include "qig/quadrature.hpp"

using namespace qig;

namespace {

constexpr double kPi = 3.14159265358979323846;

// radial-marginal normalization check: priors factor as A(r) sin th1
double total_mass(PriorId id) {
    auto res = integrate_tanh_sinh(
        [&](double u) {
            double r = 1.0 - u * u;
            r = std::min(std::max(r, 1e-13), 1.0 - 1e-13);
            // angular mass of sin th1 over [0,pi]x[0,2pi] is 4 pi; density
            // evaluated at th1 = pi/2 carries sin = 1
            return prior_eval(id, r, kPi / 2.0, 1.0) * 4.0 * kPi * 2.0 * u;
        },
        0.0, 1.0, 1e-10);
    return res.value;
}

}  // namespace

TEST_CASE("all prior densities are normalized") {
    for (auto id : {PriorId::p_B, PriorId::p_Bq1trunc, PriorId::p_F, PriorId::p_Fq1,
                    PriorId::uniform_ball})
        CHECK(total_mass(id) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(prior_eval(PriorId::p_B, 0.0, 1.0, 1.0) == 0.0);  // r -> 0 limit
    CHECK_THROWS_AS(prior_eval(PriorId::p_B, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("likelihood values") {
    const auto rec = canonical_record();
    CHECK(likelihood(rec, 0.0, 0.0, 0.0) == doctest::Approx(1.0 / 64.0));
    CHECK(likelihood(rec, 0.3, -0.2, 0.5) ==
          doctest::Approx((1 - 0.09) * (1 - 0.04) * (1 - 0.25) / 64.0));

    MeasurementRecord zup;
    zup.up = {0, 0, 1};
    CHECK(likelihood(zup, 0.1, 0.2, 0.4) == doctest::Approx(0.7));

    // q-extended pair factor reduces to (1 - z^2)/4 at q = 1
    MeasurementRecord zpair;
    zpair.up = {0, 0, 1};
    zpair.down = {0, 0, 1};
    zpair.q_extended = true;
    CHECK(likelihood(zpair, 0.0, 0.0, 0.6, 1.0) == doctest::Approx((1 - 0.36) / 4.0));
    // outcome probabilities along an axis sum to one for all (q, r)
    for (double q : {0.5, 2.0, 40.0}) {
        MeasurementRecord up1, dn1;
        up1.up = {0, 0, 1};
        dn1.down = {0, 0, 1};
        up1.q_extended = dn1.q_extended = true;
        for (double z : {0.1, 0.5, 0.9}) {
            const double pu = likelihood(up1, 0.0, 0.0, z, q);
            const double pd = likelihood(dn1, 0.0, 0.0, z, q);
            CHECK(pu + pd == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("posterior with an empty record leaves the prior unchanged") {
    MeasurementRecord empty;
    const auto u = prior(PriorId::uniform_ball);
    const auto post = posterior(u, empty, 1.0);
    CHECK(post.density(0.5, 1.0, 2.0) == doctest::Approx(u.density(0.5, 1.0, 2.0)));
}

TEST_CASE("kl basics") {
    const auto pB = prior(PriorId::p_B);
    CHECK(kl(pB, pB) == doctest::Approx(0.0).epsilon(1e-9));
    const auto pBt = prior(PriorId::p_Bq1trunc);
    CHECK(kl(pB, pBt) > 0.0);
    CHECK(kl(pBt, pB) > 0.0);
}

TEST_CASE("clarke self-comparison is undecided") {
    const auto pB = prior(PriorId::p_B);
    const auto v = clarke_compare(pB, pB, canonical_record());
    CHECK(v.more_noninformative == "undecided");
}

TEST_CASE("biasedness marginal of p_B matches the analytic angular reduction") {
    const auto curve = biasedness_curve(PriorId::p_B, 0.3, 0.7, 5);
    for (const auto& pt : curve) {
        const double want = 4.0 * pt.r * pt.r / (kPi * std::sqrt(1.0 - pt.r * pt.r));
        CHECK(pt.value == doctest::Approx(want).epsilon(1e-10));
    }
    // the near-origin ordering differs from the near-pure ordering
    auto at = [&](PriorId id, double r) { return biasedness_curve(id, r, r + 1e-4, 2)[0].value; };
    CHECK(at(PriorId::p_F, 0.05) > at(PriorId::p_B, 0.05));
    CHECK(at(PriorId::p_B, 0.05) > at(PriorId::p_Bq1trunc, 0.05));
    CHECK(at(PriorId::p_Bq1trunc, 0.05) > at(PriorId::p_Fq1, 0.05));
}

TEST_CASE("q-truncated prior: normalization constant and divergence guard") {
    const auto pr = q_truncated_prior();
    CHECK(pr.normalization ==
          doctest::Approx(kPi * (1.0 + std::log(4.0)) * std::log(1000.0) / 24.0));
    CHECK_THROWS_AS(q_truncated_prior(0.5, std::numeric_limits<double>::infinity()),
                    DivergenceError);
    // per-q slices integrate to the log-uniform marginal: 1/(q log 1000)
    for (double q : {0.5, 3.0, 80.0, 499.0}) {
        auto slice = integrate_tanh_sinh(
            [&](double u) {
                return bures_trunc_element_omr(u * u, q) / pr.normalization * 4.0 * kPi *
                       2.0 * u;
            },
            0.0, 1.0, 1e-12);
        CHECK(slice.value == doctest::Approx(1.0 / (q * std::log(1000.0))).epsilon(1e-7));
    }
}
