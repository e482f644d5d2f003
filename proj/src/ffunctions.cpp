#include "qig/ffunctions.hpp"

#include <cmath>

namespace qig {

namespace {

// denominator of f_F as a series in x = -log t (cancellation below t ~ 0.95)
double husimi_denom(double t) {
    if (t <= 0.95) return t * t - 2.0 * t * std::log(t) - 1.0;
    const double x = -std::log(t);
    const double x3 = x * x * x;
    return x3 * (-1.0 / 3.0 + x * (1.0 / 3.0 + x * (-11.0 / 60.0 +
                 x * (13.0 / 180.0 + x * (-19.0 / 840.0 + x / 168.0)))));
}

// bracket B(t,q) = (1-q) + (1+q)t - (1+q)t^q + (q-1)t^(1+q); O((1-t)^3) zero,
// evaluated by series when cancellation would dominate
double fq_bracket(double t, double q) {
    const double x = -std::log(t);
    if ((1.0 + q) * x < 25.0 && x < 0.2) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 80; ++k) {
            term *= -x / k;
            const double ck = (1.0 + q) * (1.0 - std::pow(q, k)) -
                              (1.0 - q) * std::pow(1.0 + q, k);
            sum += ck * term;
            if (k > 6 && std::abs(ck * term) < 1e-18 * std::max(std::abs(sum), 1e-300)) break;
        }
        return sum;
    }
    return (1.0 - q) + (1.0 + q) * t - (1.0 + q) * std::pow(t, q) +
           (q - 1.0) * std::pow(t, 1.0 + q);
}

void check_domain(double t) {
    if (!(t > 0.0) || t > 1.0 + 1e-12)
        throw DomainError("f-function argument outside (0, 1]");
}

}  // namespace

FFunction f_bures() {
    return {"bures", [](double t) {
                check_domain(t);
                return 0.5 * (1.0 + t);
            }};
}

FFunction f_bures_q(double q) {
    return {"bures_q", [q](double t) {
                check_domain(t);
                if (std::abs(t - 1.0) < 1e-14)
                    throw DomainError("f_bures_q has a pole at t=1 (no finite limit)");
                const double tq = std::pow(t, q);
                const double d = tq - 1.0;
                return 2.0 * (1.0 + t) * (1.0 + tq) * (1.0 + tq) / (d * d);
            }};
}

FFunction f_fisher_husimi() {
    return {"fisher_husimi", [](double t) {
                check_domain(t);
                if (std::abs(t - 1.0) < 1e-9) return 3.0;  // analytic limit
                const double n = (t - 1.0) * (t - 1.0) * (t - 1.0);
                return n / husimi_denom(t);
            }};
}

FFunction f_fisher_husimi_q(double q) {
    return {"fisher_husimi_q", [q](double t) {
                check_domain(t);
                if (std::abs(t - 1.0) < 1e-9) return 3.0 / (q * q);
                if (std::abs(q - 1.0) < 1e-12) return f_fisher_husimi()(t);
                const double num = (q - 1.0) * (t - 1.0) * (t - 1.0) *
                                   std::expm1((1.0 + q) * std::log(t));
                return num / (q * (1.0 + t) * fq_bracket(t, q));
            }};
}

FFunction f_wigner_yanase() {
    return {"wigner_yanase", [](double t) {
                check_domain(t);
                const double s = 0.5 * (1.0 + std::sqrt(t));
                return s * s;
            }};
}

double mc_weight(const FFunction& f, double x, double y) {
    return 1.0 / (y * f.eval(x / y));
}

double f_eval(const FFunction& f, double t) { return f.eval(t); }

}  // namespace qig
