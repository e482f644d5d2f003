#include <cmath>

#include "qig/metric.hpp"

namespace qig {

namespace {

const double kC = 2.0 * std::sqrt(2.0);
const double kRt2 = std::sqrt(2.0);

double W_of(double r) { return (1.0 - r) / (1.0 + r); }

void check_open_ball(double r) {
    if (r <= 0.0 || r >= 1.0)
        throw DomainError("closed form has a removable singularity at r in {0,1}");
}

MetricTensor bloch_bures_t(const ParamPoint& p) {
    const double r = p[0], t1 = p[1];
    check_open_ball(r);
    MetricTensor out;
    out.coords = {"r", "th1", "th2"};
    out.g = RMat::Zero(3, 3);
    out.g(0, 0) = 0.25 / (1.0 - r * r);
    out.g(1, 1) = 0.25 * r * r;
    out.g(2, 2) = 0.25 * r * r * std::sin(t1) * std::sin(t1);
    return out;
}

// 4x4 q-extended Bures in (r, th1, th2, q); truncation zeroes the dq dr entry
MetricTensor extended_bures_t(const ParamPoint& p, bool truncated) {
    const double r = p[0], t1 = p[1], q = p[3];
    check_open_ball(r);
    const double W = W_of(r);
    const double Wq = std::pow(W, q);
    const double lw = std::log(W);
    const double pre = 1.0 / (4.0 * (1.0 + Wq) * (1.0 + Wq));
    MetricTensor out;
    out.coords = {"r", "th1", "th2", "q"};
    out.g = RMat::Zero(4, 4);
    out.g(3, 3) = pre * Wq * lw * lw;
    out.g(0, 0) = pre * 4.0 * q * q * Wq / ((r * r - 1.0) * (r * r - 1.0));
    const double tang = pre * (Wq - 1.0) * (Wq - 1.0);
    out.g(1, 1) = tang;
    out.g(2, 2) = tang * std::sin(t1) * std::sin(t1);
    if (!truncated) {
        // printed dq dr coefficient is twice the tensor entry
        out.g(0, 3) = out.g(3, 0) = 0.5 * pre * 4.0 * q * Wq * lw / (r * r - 1.0);
    }
    return out;
}

MetricTensor extended_bures_q1_t(const ParamPoint& p, bool truncated) {
    const double r = p[0], t1 = p[1];
    check_open_ball(r);
    const double lw = std::log(W_of(r));
    MetricTensor out = bloch_bures_t({r, t1, p[2]});
    out.coords = {"r", "th1", "th2", "q"};
    RMat g = RMat::Zero(4, 4);
    g.topLeftCorner(3, 3) = out.g;
    g(3, 3) = (1.0 - r * r) * lw * lw / 16.0;
    if (!truncated) g(0, 3) = g(3, 0) = -lw / 8.0;
    out.g = g;
    return out;
}

MetricTensor qutrit_bures_t(const ParamPoint& p) {
    const double v = p[0], r = p[1], t1 = p[2];
    if (r <= 0.0 || r >= v || v >= 1.0)
        throw DomainError("qutrit closed form needs 0 < r < v < 1");
    MetricTensor out;
    out.coords = {"v", "r", "th1", "th2"};
    out.g = RMat::Zero(4, 4);
    out.g(0, 0) = 0.25 * (r * r - v) / ((1.0 - v) * (r * r - v * v));
    out.g(1, 1) = 0.25 * v / (v * v - r * r);
    // the printed dv dr coefficient is the tensor entry itself (pinned by the
    // printed normalized prior)
    out.g(0, 1) = out.g(1, 0) = 0.25 * r / (r * r - v * v);
    out.g(2, 2) = 0.25 * r * r / v;
    out.g(3, 3) = 0.25 * r * r * std::sin(t1) * std::sin(t1) / v;
    return out;
}

double ar_c_coefficient(double b, double s) {
    const double l8 = std::log(8.0 - s);
    const double lm = std::log(s - kC * b);
    const double lp = std::log(s + kC * b);
    return -4.0 * l8 * l8 * s * (-8.0 + s) +
           2.0 * lm * lp * (8.0 * b * b - s * s) -
           lm * lm * (8.0 * b * b + s * (-16.0 + s) - 4.0 * kRt2 * b * (-8.0 + s)) -
           lp * lp * (8.0 * b * b + s * (-16.0 + s) + 4.0 * kRt2 * b * (-8.0 + s)) +
           4.0 * l8 * (-8.0 + s) * (lm * (-kC * b + s) + lp * (kC * b + s));
}

MetricTensor ar_q1_t(const ParamPoint& p) {
    const double b = p[0], s = p[1];
    if (b <= 0.0 || s <= kC * b || s >= 8.0)
        throw DomainError("AR closed form needs 0 < 2sqrt2 b < sigma2 < 8");
    const double X = s * s - 8.0 * b * b;
    MetricTensor out;
    out.coords = {"b", "sigma2", "q"};
    out.g = RMat::Zero(3, 3);
    out.g(0, 0) = s / (4.0 * X);
    out.g(0, 1) = out.g(1, 0) = -b / (4.0 * X);  // printed coefficient halved
    out.g(1, 1) = (s - b * b) / (4.0 * (8.0 - s) * X);
    out.g(2, 2) = ar_c_coefficient(b, s) / 1024.0;
    out.g(0, 2) = out.g(2, 0) =
        (std::log(s - kC * b) - std::log(s + kC * b)) / (16.0 * kRt2);
    out.g(1, 2) = out.g(2, 1) =
        (2.0 * std::log(8.0 - s) - std::log(s - kC * b) - std::log(s + kC * b)) / 64.0;
    return out;
}

}  // namespace

MetricTensor closed_form_tensor(ClosedForm model, const ParamPoint& p) {
    switch (model) {
        case ClosedForm::bloch_bures: return bloch_bures_t(p);
        case ClosedForm::extended_bures: return extended_bures_t(p, false);
        case ClosedForm::extended_bures_truncated: return extended_bures_t(p, true);
        case ClosedForm::extended_bures_q1: return extended_bures_q1_t(p, false);
        case ClosedForm::extended_bures_q1_truncated: return extended_bures_q1_t(p, true);
        case ClosedForm::qutrit_bures: return qutrit_bures_t(p);
        case ClosedForm::ar_q1: return ar_q1_t(p);
    }
    throw DomainError("unknown closed form");
}

double qutrit_q_tangential(double v, double r, double q) {
    const double a = std::pow(v - r, q), b = std::pow(v + r, q);
    const double m = std::pow(2.0 - 2.0 * v, q);
    const double d = a - b;
    return d * d / (4.0 * r * r * (a + b) * (m + a + b));
}

double ar_volume_element_q1(double b, double s) {
    const double X = (8.0 - s) * (s * s - 8.0 * b * b);
    if (X <= 0.0) throw DomainError("AR element outside feasible region");
    return 0.25 / std::sqrt(X);
}

double ar_volume_element(double b, double s, double q) {
    const double vm = s - kC * b, vp = s + kC * b, v8 = 8.0 - s;
    if (vm <= 0.0 || v8 <= 0.0) throw DomainError("AR element outside feasible region");
    const double iq = 1.0 / q;
    const double num = std::pow(v8, iq - 2.0) * std::pow(vm, iq) * std::pow(vp, iq);
    const double N = 2.0 * std::pow(v8, iq) + std::pow(vm, iq) + std::pow(vp, iq);
    const double X = s * s - 8.0 * b * b;
    const double den = q * q * q * q * X * X * N * N * N;
    return 16.0 * std::sqrt(num / den);
}

double trivariate_bures_element(double b, double s, double alpha) {
    const double C = (8.0 * alpha - s) * s * s -
                     4.0 * kRt2 * (alpha - 1.0) * b * (s - 4.0 * alpha) * s;
    const double D = 16.0 * kRt2 * (alpha - 1.0) * alpha * b * b * b -
                     8.0 * b * b * ((s + 8.0) * alpha * alpha - 3.0 * s * alpha + s);
    if (C + D <= 0.0) throw DomainError("alpha-model element outside feasible region");
    return 0.25 * std::sqrt(1.0 / (C + D));
}

double bures_trunc_element_omr(double omr, double q) {
    // omr = 1 - r, passed exactly so the (1-r)^(q-1) edge behaviour survives
    // the floating representation of r near 1
    if (omr <= 0.0 || omr >= 1.0) return 0.0;
    const double lw = std::log(omr) - std::log(2.0 - omr);  // log W
    const double Wq = std::exp(q * lw);
    const double one_minus_r2 = omr * (2.0 - omr);
    return -q * Wq * lw * (1.0 - Wq) * (1.0 - Wq) /
           (8.0 * std::pow(1.0 + Wq, 4) * one_minus_r2);
}

double bures_trunc_element(double r, double q) {
    return bures_trunc_element_omr(1.0 - r, q);
}

double bures_trunc_ball_integral(double q) {
    return M_PI * (1.0 + std::log(4.0)) / (24.0 * q);
}

double bures_trunc_q_antiderivative(double r, double q) {
    const double lw = std::log1p(-r) - std::log1p(r);
    const double Wq = std::exp(q * lw);
    const double num = q * Wq * (3.0 + Wq * Wq) * lw -
                       (1.0 + Wq) * (2.0 * Wq + (1.0 + Wq) * (1.0 + Wq) * std::log1p(Wq));
    return M_PI * num / (6.0 * (r * r - 1.0) * std::pow(1.0 + Wq, 3) * lw);
}

}  // namespace qig
