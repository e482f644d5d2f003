#include "qig/husimi.hpp"

#include <cmath>
#include <mutex>

#include "qig/ffunctions.hpp"

namespace qig {

namespace {

constexpr double kPi = 3.14159265358979323846;

void bloch_vector(double r, double th1, double th2, double& x, double& y, double& z) {
    x = r * std::cos(th1);
    y = r * std::sin(th1) * std::cos(th2);
    z = r * std::sin(th1) * std::sin(th2);
}

double W_of(double r) { return (1.0 - r) / (1.0 + r); }

// (L - 2r)/(2 r^3) with L = log((1+r)/(1-r)); series below the cancellation zone
double husimi_grr(double r) {
    if (r < 1e-3) {
        const double r2 = r * r;
        return 1.0 / 3.0 + r2 / 5.0 + r2 * r2 / 7.0;
    }
    const double lw = std::log1p(-r) - std::log1p(r);
    return (-2.0 * r - lw) / (2.0 * r * r * r);
}

// E_q[phi] under the escort direction density c_q (1+r u)^q / 2 on u in [-1,1]
double escort_expect(const Fn1& phi, double r, double q, double tol) {
    auto num = integrate_adaptive([&](double u) {
        return phi(u) * std::pow(1.0 + r * u, q);
    }, -1.0, 1.0, tol, tol, 2000);
    auto den = integrate_adaptive([&](double u) {
        return std::pow(1.0 + r * u, q);
    }, -1.0, 1.0, tol, tol, 2000);
    return num.value / den.value;
}

}  // namespace

double husimi(const DensityMatrix& rho, const std::array<double, 3>& omega) {
    if (rho.dim() != 2) throw DimensionError("husimi needs a qubit state");
    // <Omega|rho|Omega> = (1 + a.n)/2 for Bloch vector a
    const double ax = 2.0 * rho.m(0, 1).real();
    const double ay = -2.0 * rho.m(0, 1).imag();
    const double az = (rho.m(0, 0) - rho.m(1, 1)).real();
    const double q = 0.5 * (1.0 + ax * omega[0] + ay * omega[1] + az * omega[2]);
    return q / (2.0 * kPi);  // integrates to 1 over solid angle
}

double escort_husimi(double q, double r, double th1, double th2,
                     const std::array<double, 3>& omega) {
    if (q < 0.5 - 1e-12 || q > 500.0 + 1e-12)
        throw DomainError("escort parameter outside [1/2, 500]");
    double ax, ay, az;
    bloch_vector(r, th1, th2, ax, ay, az);
    const double H = 1.0 + ax * omega[0] + ay * omega[1] + az * omega[2];
    if (r < 1e-14) return 1.0 / (4.0 * kPi);
    const double pre = 2.0 * r * (1.0 + q) /
                       (std::pow(1.0 + r, 1.0 + q) - std::pow(1.0 - r, 1.0 + q));
    return pre * std::pow(H, q) / (4.0 * kPi);
}

HusimiFisher husimi_fisher_components(double r, double q, double tol) {
    auto E = [&](const Fn1& phi) { return escort_expect(phi, r, q, tol); };
    const double Elg = E([&](double u) { return std::log1p(r * u); });
    const double Elg2 = E([&](double u) { const double l = std::log1p(r * u); return l * l; });
    const double Eu = E([&](double u) { return u / (1.0 + r * u); });
    const double Eu2 = E([&](double u) { const double s = u / (1.0 + r * u); return s * s; });
    const double Elu = E([&](double u) { return std::log1p(r * u) * u / (1.0 + r * u); });
    const double Et = E([&](double u) {
        const double d = 1.0 + r * u;
        return (1.0 - u * u) / (2.0 * d * d);
    });
    HusimiFisher out;
    out.g_qq = Elg2 - Elg * Elg;
    out.g_rr = q * q * (Eu2 - Eu * Eu);
    out.g_qr = q * (Elu - Elg * Eu);
    out.tang = q * q * r * r * Et;
    return out;
}

MetricTensor fisher_tensor_numeric(const ParamPoint& p, bool extended_q) {
    const double r = p[0], t1 = p[1], t2 = p[2];
    const double q = extended_q ? p[3] : 1.0;
    if (r <= 0.0 || r >= 1.0) throw DomainError("fisher_tensor_numeric needs 0 < r < 1");

    // product sphere rule, refined until the tensor stabilizes
    auto assemble = [&](int n) {
        const auto& gl = gauss_legendre(n);
        const int nphi = 2 * n;
        const int np = extended_q ? 4 : 3;
        RMat g = RMat::Zero(np, np);
        const double h = 1e-6;
        for (const auto& [c, wc] : gl) {
            const double st = std::sqrt(1.0 - c * c);
            for (int k = 0; k < nphi; ++k) {
                const double phi = 2.0 * kPi * (k + 0.5) / nphi;
                const std::array<double, 3> omega{c, st * std::cos(phi), st * std::sin(phi)};
                const double w = wc * (2.0 * kPi / nphi);
                const double H0 = escort_husimi(q, r, t1, t2, omega);
                std::vector<double> dlog(np);
                auto lh = [&](double rr, double tt1, double tt2, double qq) {
                    return std::log(escort_husimi(qq, rr, tt1, tt2, omega));
                };
                dlog[0] = (lh(r + h, t1, t2, q) - lh(r - h, t1, t2, q)) / (2.0 * h);
                dlog[1] = (lh(r, t1 + h, t2, q) - lh(r, t1 - h, t2, q)) / (2.0 * h);
                dlog[2] = (lh(r, t1, t2 + h, q) - lh(r, t1, t2 - h, q)) / (2.0 * h);
                if (extended_q)
                    dlog[3] = (lh(r, t1, t2, q + h) - lh(r, t1, t2, q - h)) / (2.0 * h);
                for (int i = 0; i < np; ++i)
                    for (int j = i; j < np; ++j) g(i, j) += w * H0 * dlog[i] * dlog[j];
            }
        }
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < i; ++j) g(i, j) = g(j, i);
        return g;
    };

    RMat prev = assemble(24);
    for (int n : {36, 54, 80, 120}) {
        RMat cur = assemble(n);
        if ((cur - prev).cwiseAbs().maxCoeff() <= 1e-7 * std::max(1.0, cur.cwiseAbs().maxCoeff())) {
            MetricTensor out;
            out.g = cur;
            out.coords = extended_q ? std::vector<std::string>{"r", "th1", "th2", "q"}
                                    : std::vector<std::string>{"r", "th1", "th2"};
            return out;
        }
        prev = cur;
    }
    throw QuadratureFailure("sphere rule did not stabilize to 1e-7");
}

MetricTensor husimi_q1_tensor(const ParamPoint& p) {
    const double r = p[0], t1 = p[1];
    if (r <= 0.0 || r >= 1.0) throw DomainError("husimi tensor needs 0 < r < 1");
    MetricTensor out;
    out.coords = {"r", "th1", "th2"};
    out.g = RMat::Zero(3, 3);
    out.g(0, 0) = husimi_grr(r);
    const double tang = r * r / ((1.0 + r) * f_fisher_husimi()(W_of(r)));
    out.g(1, 1) = tang;
    out.g(2, 2) = tang * std::sin(t1) * std::sin(t1);
    return out;
}

MetricTensor extended_fisher_q1_tensor(const ParamPoint& p) {
    const double r = p[0];
    if (r <= 0.0 || r >= 1.0) throw DomainError("extended tensor needs 0 < r < 1");
    const double lw = std::log(W_of(r));
    MetricTensor base = husimi_q1_tensor({p[0], p[1], p[2]});
    MetricTensor out;
    out.coords = {"r", "th1", "th2", "q"};
    out.g = RMat::Zero(4, 4);
    out.g.topLeftCorner(3, 3) = base.g;
    out.g(3, 3) = 0.25 - (1.0 - r * r) * (1.0 - r * r) * lw * lw / (16.0 * r * r);
    // printed dq dr coefficient is twice the tensor entry
    out.g(0, 3) = out.g(3, 0) = (2.0 * r - (r * r - 1.0) * lw) / (4.0 * r * r);
    return out;
}

double husimi_elem3(double r) {
    const double tang = r * r / ((1.0 + r) * f_fisher_husimi()(W_of(r)));
    return std::sqrt(husimi_grr(r)) * tang;
}

double husimi_elem4_q1(double r) {
    // det of the (q, r) block factorizes; series guards the r -> 0 cancellation
    const double eps = 1.0 - r * r;
    const double lw = std::log1p(-r) - std::log1p(r);
    const double L = -lw;
    double block;
    if (r < 0.05) {
        const double r4 = r * r * r * r;
        block = r4 / 135.0 + 47.0 * r4 * r * r / 4725.0;
    } else {
        block = (2.0 * r - eps * L) * (2.0 * r * L + eps * L * L - 8.0 * r * r) /
                (32.0 * std::pow(r, 5));
    }
    const double tang = r * r / ((1.0 + r) * f_fisher_husimi()(W_of(r)));
    return std::sqrt(std::max(block, 0.0)) * tang;
}

namespace {

double ball_integral(const Fn1& radial) {
    // 4 pi * int_0^1 radial(r) dr with the r = 1 - u^2 edge substitution;
    // clamp keeps r strictly inside (0, 1) at extreme nodes
    auto res = integrate_tanh_sinh([&](double u) {
        double r = 1.0 - u * u;
        r = std::min(std::max(r, 1e-13), 1.0 - 1e-13);
        return radial(r) * 2.0 * u;
    }, 0.0, 1.0, 1e-12);
    return 4.0 * kPi * res.value;
}

}  // namespace

double husimi_norm3() {
    static std::once_flag flag;
    static double val = 0.0;
    std::call_once(flag, [] { val = ball_integral(husimi_elem3); });
    return val;
}

double husimi_norm4_q1() {
    static std::once_flag flag;
    static double val = 0.0;
    std::call_once(flag, [] { val = ball_integral(husimi_elem4_q1); });
    return val;
}

QuadratureResult marginal_q(double q, double tol) {
    if (q < 0.5 || q > 500.0) throw DomainError("q outside [1/2, 500]");
    auto radial = [&](double r) {
        const auto f = husimi_fisher_components(r, q, 1e-11);
        const double block = f.g_qq * f.g_rr - f.g_qr * f.g_qr;
        return std::sqrt(std::max(block, 0.0)) * f.tang;
    };
    // mass concentrates near r ~ 1/q for large q
    const double split = std::min(0.5, 2.0 / q);
    auto r1 = integrate_adaptive(radial, 1e-7, split, tol * 0.1, tol, 600);
    auto r2 = integrate_adaptive(radial, split, 1.0 - 1e-9, tol * 0.1, tol, 600);
    QuadratureResult out;
    out.method = "cubature";
    out.value = 4.0 * kPi * (r1.value + r2.value);
    out.abs_error = 4.0 * kPi * (r1.abs_error + r2.abs_error);
    out.n_evals = r1.n_evals + r2.n_evals;
    return out;
}

QuadratureResult marginal_r(double r, double tol) {
    if (r <= 0.0 || r >= 1.0) throw DomainError("r outside (0, 1)");
    auto f = [&](double v) {  // v = log q
        const double q = std::exp(v);
        const auto c = husimi_fisher_components(r, q, 1e-10);
        const double block = c.g_qq * c.g_rr - c.g_qr * c.g_qr;
        return std::sqrt(std::max(block, 0.0)) * c.tang * q;
    };
    auto res = integrate_adaptive(f, std::log(0.5), std::log(500.0), tol * 0.1, tol, 400);
    res.value *= 4.0 * kPi;
    res.abs_error *= 4.0 * kPi;
    return res;
}

std::pair<double, double> marginal_q_peak() {
    // golden-section maximum of marginal_q on [2, 6]
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 2.0, b = 6.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = marginal_q(c).value, fd = marginal_q(d).value;
    while (b - a > 1e-5) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = marginal_q(c).value;
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = marginal_q(d).value;
        }
    }
    const double x = 0.5 * (a + b);
    return {x, marginal_q(x).value};
}

}  // namespace qig
