#include "qig/charts.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qig {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kRt2 = std::sqrt(2.0);
const double kC = 2.0 * std::sqrt(2.0);  // 2*sqrt(2)

CMat qubit_matrix(double x, double y, double z) {
    CMat m(2, 2);
    m(0, 0) = cplx(1.0 + z, 0.0);
    m(0, 1) = cplx(x, -y);
    m(1, 0) = cplx(x, y);
    m(1, 1) = cplx(1.0 - z, 0.0);
    return 0.5 * m;
}

void sph_to_cart(double r, double th1, double th2, double& x, double& y, double& z) {
    x = r * std::cos(th1);
    y = r * std::sin(th1) * std::cos(th2);
    z = r * std::sin(th1) * std::sin(th2);
}

}  // namespace

bool FamilyChart::in_box(const ParamPoint& p) const {
    if (p.size() != bounding_box.size()) throw DimensionError("point/chart dimension mismatch");
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] < bounding_box[i].first - kFeasTol || p[i] > bounding_box[i].second + kFeasTol)
            return false;
    return true;
}

DensityMatrix build_state(const FamilyChart& chart, const ParamPoint& p) {
    if (!chart.in_box(p)) throw DomainError(chart.family_id + ": point outside bounding box");
    if (!chart.feasible(p)) throw InfeasiblePoint(chart.family_id + ": infeasible point");
    return make_density(chart.build_raw(p));
}

DensityMatrix escort_state(const DensityMatrix& rho, double q) {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho.m);
    RVec lam = es.eigenvalues().cwiseMax(0.0);
    RVec lq(lam.size());
    for (int i = 0; i < lam.size(); ++i) lq(i) = std::pow(lam(i), q);
    lq /= lq.sum();
    return DensityMatrix{es.eigenvectors() * lq.asDiagonal() * es.eigenvectors().adjoint()};
}

// ---------------------------------------------------------------- bloch ---

FamilyChart bloch_qubit() {
    FamilyChart c;
    c.family_id = "bloch_qubit";
    c.param_names = {"r", "th1", "th2"};
    c.bounding_box = {{0.0, 1.0}, {0.0, kPi}, {0.0, 2.0 * kPi}};
    c.build_raw = [](const ParamPoint& p) {
        double x, y, z;
        sph_to_cart(p[0], p[1], p[2], x, y, z);
        return qubit_matrix(x, y, z);
    };
    c.feasible = [](const ParamPoint& p) { return p[0] <= 1.0 + kFeasTol; };
    c.analytic_diff = [](const ParamPoint& p, int i) {
        const double r = p[0], t1 = p[1], t2 = p[2];
        const double c1 = std::cos(t1), s1 = std::sin(t1), c2 = std::cos(t2), s2 = std::sin(t2);
        double dx = 0, dy = 0, dz = 0;
        switch (i) {
            case 0: dx = c1; dy = s1 * c2; dz = s1 * s2; break;
            case 1: dx = -r * s1; dy = r * c1 * c2; dz = r * c1 * s2; break;
            case 2: dx = 0; dy = -r * s1 * s2; dz = r * s1 * c2; break;
        }
        CMat m(2, 2);
        m(0, 0) = cplx(dz, 0);
        m(0, 1) = cplx(dx, -dy);
        m(1, 0) = cplx(dx, dy);
        m(1, 1) = cplx(-dz, 0);
        return CMat(0.5 * m);
    };
    return c;
}

// ---------------------------------------------------------------- escort --

FamilyChart escort_qubit() {
    FamilyChart c;
    c.family_id = "escort_qubit";
    c.param_names = {"r", "th1", "th2", "q"};
    c.bounding_box = {{0.0, 1.0}, {0.0, kPi}, {0.0, 2.0 * kPi}, {0.5, 500.0}};
    c.build_raw = [](const ParamPoint& p) {
        const double r = p[0], q = p[3];
        double x, y, z;
        sph_to_cart(r, p[1], p[2], x, y, z);
        // eigenprojectors of the Bloch matrix; eigenvalues (1 +- r)/2
        const CMat rho = qubit_matrix(x, y, z);
        if (r < 1e-14) return rho;  // fully mixed for any q
        const CMat id = CMat::Identity(2, 2);
        const CMat nsig = (2.0 * rho - id) / r;  // unit Bloch direction dotted with sigma
        const CMat pp = 0.5 * (id + nsig), pm = 0.5 * (id - nsig);
        const double a = std::pow(1.0 + r, q), b = std::pow(1.0 - r, q);
        return CMat((a * pp + b * pm) / (a + b));
    };
    c.feasible = [](const ParamPoint& p) {
        return p[0] <= 1.0 + kFeasTol && p[3] >= 0.5 - kFeasTol && p[3] <= 500.0 + kFeasTol;
    };
    return c;
}

// ---------------------------------------------------------------- qutrit --

namespace {

CMat qutrit_matrix(double v, double x, double y, double z) {
    CMat m = CMat::Zero(3, 3);
    m(0, 0) = cplx(v + z, 0);
    m(0, 2) = cplx(x, -y);
    m(2, 0) = cplx(x, y);
    m(1, 1) = cplx(2.0 - 2.0 * v, 0);
    m(2, 2) = cplx(v - z, 0);
    return 0.5 * m;
}

}  // namespace

FamilyChart qutrit_v() {
    FamilyChart c;
    c.family_id = "qutrit_v";
    c.param_names = {"v", "r", "th1", "th2"};
    c.bounding_box = {{0.0, 1.0}, {0.0, 1.0}, {0.0, kPi}, {0.0, 2.0 * kPi}};
    c.build_raw = [](const ParamPoint& p) {
        double x, y, z;
        sph_to_cart(p[1], p[2], p[3], x, y, z);
        return qutrit_matrix(p[0], x, y, z);
    };
    c.feasible = [](const ParamPoint& p) {
        return p[1] <= p[0] + kFeasTol && p[0] <= 1.0 + kFeasTol;
    };
    c.analytic_diff = [](const ParamPoint& p, int i) {
        const double r = p[1], t1 = p[2], t2 = p[3];
        const double c1 = std::cos(t1), s1 = std::sin(t1), c2 = std::cos(t2), s2 = std::sin(t2);
        double dv = 0, dx = 0, dy = 0, dz = 0;
        switch (i) {
            case 0: dv = 1; break;
            case 1: dx = c1; dy = s1 * c2; dz = s1 * s2; break;
            case 2: dx = -r * s1; dy = r * c1 * c2; dz = r * c1 * s2; break;
            case 3: dy = -r * s1 * s2; dz = r * s1 * c2; break;
        }
        CMat m = CMat::Zero(3, 3);
        m(0, 0) = cplx(dv + dz, 0);
        m(0, 2) = cplx(dx, -dy);
        m(2, 0) = cplx(dx, dy);
        m(1, 1) = cplx(-2.0 * dv, 0);
        m(2, 2) = cplx(dv - dz, 0);
        return CMat(0.5 * m);
    };
    return c;
}

FamilyChart qutrit_v_q() {
    FamilyChart c;
    c.family_id = "qutrit_v_q";
    c.param_names = {"v", "r", "th1", "th2", "q"};
    c.bounding_box = {{0.0, 1.0}, {0.0, 1.0}, {0.0, kPi}, {0.0, 2.0 * kPi}, {0.5, 500.0}};
    const FamilyChart base = qutrit_v();
    c.build_raw = [base](const ParamPoint& p) {
        const ParamPoint q4(p.begin(), p.begin() + 4);
        const CMat rho = base.build_raw(q4);
        return escort_state(DensityMatrix{rho}, p[4]).m;
    };
    c.feasible = [base](const ParamPoint& p) {
        const ParamPoint q4(p.begin(), p.begin() + 4);
        return base.feasible(q4) && p[4] >= 0.5 - kFeasTol;
    };
    return c;
}

// ---------------------------------------------------------------- AR ------

Eigen::Vector4d ar_weights(double b, double s, double q) {
    // Bell order (Phi+, Phi-, Psi+, Psi-): the mean constraint pairs the
    // (s + 2sqrt2 b) branch with Phi+ and the (s - 2sqrt2 b) branch with Psi-
    Eigen::Vector4d v(s + kC * b, 8.0 - s, 8.0 - s, s - kC * b);
    Eigen::Vector4d p;
    for (int i = 0; i < 4; ++i) p(i) = std::pow(std::max(v(i), 0.0), 1.0 / q);
    return p / p.sum();
}

void ar_weight_derivs(double b, double s, double q,
                      Eigen::Vector4d& db, Eigen::Vector4d& ds) {
    const Eigen::Vector4d v(s + kC * b, 8.0 - s, 8.0 - s, s - kC * b);
    const Eigen::Vector4d dvb(kC, 0.0, 0.0, -kC), dvs(1.0, -1.0, -1.0, 1.0);
    const Eigen::Vector4d p = ar_weights(b, s, q);
    // dlog p_k = (1/q) dv_k/v_k - sum_j p_j (1/q) dv_j/v_j
    Eigen::Vector4d lb = (dvb.array() / (q * v.array())).matrix();
    Eigen::Vector4d ls = (dvs.array() / (q * v.array())).matrix();
    db = (p.array() * (lb.array() - p.dot(lb))).matrix();
    ds = (p.array() * (ls.array() - p.dot(ls))).matrix();
}

FamilyChart ar_bell() {
    FamilyChart c;
    c.family_id = "ar_bell";
    c.param_names = {"b", "sigma2", "q"};
    c.bounding_box = {{0.0, kC}, {0.0, 8.0}, {0.25, 4.0}};
    c.build_raw = [](const ParamPoint& p) {
        return bell_diagonal(ar_weights(p[0], p[1], p[2]));
    };
    c.feasible = [](const ParamPoint& p) {
        return p[0] >= -kFeasTol && p[1] <= 8.0 + kFeasTol &&
               kC * p[0] <= p[1] + kFeasTol && p[2] > 0.0;
    };
    return c;
}

FamilyChart ar_bell_at(double q) {
    FamilyChart c;
    c.family_id = "ar_bell";
    c.param_names = {"b", "sigma2"};
    c.bounding_box = {{0.0, kC}, {0.0, 8.0}};
    c.build_raw = [q](const ParamPoint& p) {
        return bell_diagonal(ar_weights(p[0], p[1], q));
    };
    c.feasible = [](const ParamPoint& p) {
        return p[0] >= -kFeasTol && p[1] <= 8.0 + kFeasTol && kC * p[0] <= p[1] + kFeasTol;
    };
    c.analytic_diff = [q](const ParamPoint& p, int i) {
        Eigen::Vector4d db, ds;
        ar_weight_derivs(p[0], p[1], q, db, ds);
        return bell_diagonal(i == 0 ? db : ds);
    };
    return c;
}

std::pair<double, double> reparameterize_ar(double b, double s) {
    if (b < -kFeasTol || s < kC * b - kFeasTol || s > 8.0 + kFeasTol)
        throw InfeasiblePoint("reparameterize_ar: infeasible (b, sigma2) at q=1/2");
    const double den = 4.0 * b * b + s * s - 8.0 * s + 32.0;
    return {8.0 * b * s / den, 4.0 * (8.0 * b * b + s * s) / den};
}

// ---------------------------------------------------------------- Jaynes --

Eigen::Vector4d jaynes_weights(double b, double s, double alpha) {
    const double beta = b / kC, S = s / 8.0;
    const double p1 = (alpha * beta + S) / (alpha + 1.0);
    const double p4 = (S - beta) / (alpha * (alpha + 1.0));
    const double p2 = 0.5 * (1.0 - p1 - p4);
    return Eigen::Vector4d(p1, p2, p2, p4);
}

void jaynes_weight_derivs(double alpha, Eigen::Vector4d& db, Eigen::Vector4d& ds) {
    const double db1 = alpha / (kC * (alpha + 1.0));
    const double db4 = -1.0 / (kC * alpha * (alpha + 1.0));
    const double ds1 = 1.0 / (8.0 * (alpha + 1.0));
    const double ds4 = 1.0 / (8.0 * alpha * (alpha + 1.0));
    db = Eigen::Vector4d(db1, -0.5 * (db1 + db4), -0.5 * (db1 + db4), db4);
    ds = Eigen::Vector4d(ds1, -0.5 * (ds1 + ds4), -0.5 * (ds1 + ds4), ds4);
}

FamilyChart jaynes_alpha(double alpha) {
    if (alpha == 0.0 || alpha == -1.0)
        throw DomainError("jaynes_alpha undefined at alpha in {0, -1}");
    FamilyChart c;
    c.family_id = "jaynes_alpha";
    c.param_names = {"b", "sigma2"};
    c.bounding_box = {{0.0, kC}, {0.0, 8.0}};
    c.build_raw = [alpha](const ParamPoint& p) {
        return bell_diagonal(jaynes_weights(p[0], p[1], alpha));
    };
    c.feasible = [alpha](const ParamPoint& p) {
        if (p[0] < -kFeasTol || p[1] > 8.0 + kFeasTol || kC * p[0] > p[1] + kFeasTol)
            return false;
        return jaynes_weights(p[0], p[1], alpha).minCoeff() >= -kFeasTol;
    };
    c.analytic_diff = [alpha](const ParamPoint&, int i) {
        Eigen::Vector4d db, ds;
        jaynes_weight_derivs(alpha, db, ds);
        return bell_diagonal(i == 0 ? db : ds);
    };
    return c;
}

FamilyChart jaynes_alpha_bivariate(double alpha) {
    FamilyChart c;
    c.family_id = "jaynes_alpha_bivariate";
    c.param_names = {"b"};
    c.bounding_box = {{0.0, kC}};
    c.build_raw = [alpha](const ParamPoint& p) {
        const double s = 4.0 * (1.0 + p[0] * p[0] / 8.0);
        return bell_diagonal(jaynes_weights(p[0], s, alpha));
    };
    c.feasible = [alpha](const ParamPoint& p) {
        if (p[0] < -kFeasTol || p[0] > kC + kFeasTol) return false;
        const double s = 4.0 * (1.0 + p[0] * p[0] / 8.0);
        return jaynes_weights(p[0], s, alpha).minCoeff() >= -kFeasTol;
    };
    return c;
}

// ---------------------------------------------------------------- TLB -----

Eigen::Vector4d tlb_weights(double x, double y, double z) {
    return 0.25 * Eigen::Vector4d(1.0 - x, 1.0 - y, 1.0 - z, 1.0 + x + y + z);
}

FamilyChart tlb() {
    FamilyChart c;
    c.family_id = "tlb";
    c.param_names = {"x", "y", "z"};
    c.bounding_box = {{-3.0, 1.0}, {-3.0, 1.0}, {-3.0, 1.0}};
    c.build_raw = [](const ParamPoint& p) {
        return bell_diagonal(tlb_weights(p[0], p[1], p[2]));
    };
    c.feasible = [](const ParamPoint& p) {
        return tlb_weights(p[0], p[1], p[2]).minCoeff() >= -kFeasTol;
    };
    c.analytic_diff = [](const ParamPoint&, int i) {
        Eigen::Vector4d d = Eigen::Vector4d::Zero();
        d(i) = -0.25;
        d(3) = 0.25;
        return bell_diagonal(d);
    };
    return c;
}

FamilyChart tlb_escort() {
    FamilyChart c;
    c.family_id = "tlb_escort";
    c.param_names = {"x", "y", "z", "q"};
    c.bounding_box = {{-3.0, 1.0}, {-3.0, 1.0}, {-3.0, 1.0}, {0.5, 500.0}};
    c.build_raw = [](const ParamPoint& p) {
        Eigen::Vector4d w = tlb_weights(p[0], p[1], p[2]);
        for (int i = 0; i < 4; ++i) w(i) = std::pow(std::max(w(i), 0.0), p[3]);
        w /= w.sum();
        return bell_diagonal(w);
    };
    c.feasible = [](const ParamPoint& p) {
        return tlb_weights(p[0], p[1], p[2]).minCoeff() >= -kFeasTol && p[3] >= 0.5 - kFeasTol;
    };
    return c;
}

FamilyChart tlb_angles() {
    FamilyChart c;
    c.family_id = "tlb_angles";
    c.param_names = {"t1", "t2", "t3"};
    c.bounding_box = {{0.0, kPi / 2}, {0.0, kPi / 2}, {0.0, kPi / 2}};
    auto weights = [](const ParamPoint& p) {
        const double c1 = std::cos(p[0]), s1 = std::sin(p[0]);
        const double c2 = std::cos(p[1]), s2 = std::sin(p[1]);
        const double c3 = std::cos(p[2]), s3 = std::sin(p[2]);
        return Eigen::Vector4d(c1 * c1, s1 * s1 * c2 * c2,
                               s1 * s1 * s2 * s2 * c3 * c3, s1 * s1 * s2 * s2 * s3 * s3);
    };
    c.build_raw = [weights](const ParamPoint& p) { return bell_diagonal(weights(p)); };
    c.feasible = [](const ParamPoint&) { return true; };
    c.analytic_diff = [](const ParamPoint& p, int i) {
        const double t1 = p[0], t2 = p[1], t3 = p[2];
        const double s1 = std::sin(t1), c1 = std::cos(t1);
        const double s2 = std::sin(t2), c2 = std::cos(t2);
        const double s3 = std::sin(t3), c3 = std::cos(t3);
        Eigen::Vector4d d;
        switch (i) {
            case 0:
                d << -2 * c1 * s1, 2 * s1 * c1 * c2 * c2, 2 * s1 * c1 * s2 * s2 * c3 * c3,
                     2 * s1 * c1 * s2 * s2 * s3 * s3;
                break;
            case 1:
                d << 0, -2 * s1 * s1 * c2 * s2, 2 * s1 * s1 * s2 * c2 * c3 * c3,
                     2 * s1 * s1 * s2 * c2 * s3 * s3;
                break;
            default:
                d << 0, 0, -2 * s1 * s1 * s2 * s2 * c3 * s3, 2 * s1 * s1 * s2 * s2 * s3 * c3;
                break;
        }
        return bell_diagonal(d);
    };
    return c;
}

}  // namespace qig
