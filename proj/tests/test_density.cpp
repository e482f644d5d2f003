#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qig/density.hpp"

using namespace qig;

namespace {

CMat phi_plus_projector() {
    CVec v(4);
    v << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    return v * v.adjoint();
}

}  // namespace

TEST_CASE("density invariants") {
    CMat id2 = 0.5 * CMat::Identity(2, 2);
    CHECK_NOTHROW(make_density(id2));

    CMat bad = id2;
    bad(0, 1) = cplx(0.1, 0.2);  // non-Hermitian
    CHECK_THROWS_AS(make_density(bad), NonHermitianInput);

    CMat tr = CMat::Identity(2, 2);
    CHECK_THROWS_AS(make_density(tr), DomainError);

    CMat neg = CMat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(make_density(neg), InfeasiblePoint);
}

TEST_CASE("eigensystem on mixed and bloch states") {
    const auto es = eigensystem(make_density(0.5 * CMat::Identity(2, 2)));
    CHECK(es.values(0) == doctest::Approx(0.5));
    CHECK(es.values(1) == doctest::Approx(0.5));

    // bloch state with r = 0.6: eigenvalues (1 -+ r)/2, ratio W
    CMat m(2, 2);
    m << cplx(1.6, 0), cplx(0, 0), cplx(0, 0), cplx(0.4, 0);
    const auto es2 = eigensystem(make_density(0.5 * m));
    CHECK(es2.values(0) == doctest::Approx(0.2));
    CHECK(es2.values(1) == doctest::Approx(0.8));
    CHECK(es2.values(0) / es2.values(1) == doctest::Approx(0.25));  // (1-r)/(1+r)
}

TEST_CASE("partial transpose: involution, trace, Bell state") {
    const CMat rho = phi_plus_projector();
    const CMat pt = partial_transpose(rho);
    CHECK((pt - pt.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(pt.trace().real() - 1.0) < 1e-14);
    CHECK((partial_transpose(pt) - rho).cwiseAbs().maxCoeff() < 1e-14);

    // independent 4x4 eigensolve oracle: min eigenvalue -1/2
    Eigen::SelfAdjointEigenSolver<CMat> es(pt, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() == doctest::Approx(-0.5));
    CHECK(ppt_min_eigenvalue(rho) == doctest::Approx(-0.5));

    const CMat id4 = 0.25 * CMat::Identity(4, 4);
    CHECK((partial_transpose(id4) - id4).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(partial_transpose(CMat::Identity(3, 3)), DimensionError);
}

TEST_CASE("Peres separability verdicts") {
    CHECK_FALSE(is_separable(phi_plus_projector()));
    CHECK(is_separable(CMat(0.25 * CMat::Identity(4, 4))));
    CHECK(is_separable(CMat(0.5 * CMat::Identity(2, 2))));
    CHECK_THROWS_AS(is_separable(CMat(CMat::Identity(3, 3) / 3.0)), DimensionError);

    // Bell-diagonal boundary state: max weight exactly 1/2
    CHECK(is_separable(bell_diagonal({0.5, 0.25, 0.125, 0.125})));
    CHECK_FALSE(is_separable(bell_diagonal({0.6, 0.2, 0.1, 0.1})));
}

TEST_CASE("bell basis is orthonormal and bell_diagonal reconstructs weights") {
    const CMat& B = bell_basis();
    CHECK((B.adjoint() * B - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
    const Eigen::Vector4d w(0.4, 0.3, 0.2, 0.1);
    const CMat rho = bell_diagonal(w);
    Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
    RVec lam = es.eigenvalues();
    std::sort(lam.data(), lam.data() + 4);
    CHECK(lam(0) == doctest::Approx(0.1));
    CHECK(lam(3) == doctest::Approx(0.4));
}
