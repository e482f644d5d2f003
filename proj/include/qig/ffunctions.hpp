#pragma once

#include <functional>
#include <string>

#include "qig/errors.hpp"

namespace qig {

/// Operator-monotone-style f-functions on t in (0, 1]. The q-extended Bures
/// function diverges at t=1 and has no finite value there; the others take
/// their analytic limits.
struct FFunction {
    std::string f_id;
    std::function<double(double)> eval;

    double operator()(double t) const { return eval(t); }
};

FFunction f_bures();            // (1+t)/2
FFunction f_bures_q(double q);  // 2(1+t)(1+t^q)^2/(t^q-1)^2, pole at t=1
FFunction f_fisher_husimi();    // (t-1)^3/(t^2-2t log t-1), f(1)=3
FFunction f_fisher_husimi_q(double q);  // f(1) = 3/q^2
FFunction f_wigner_yanase();    // ((1+sqrt t)/2)^2

/// Morozova-Chentsov weight c(x, y) = 1 / (y f(x/y)).
double mc_weight(const FFunction& f, double x, double y);

/// Guarded evaluation: domain checks, limits at removable t=1 singularities.
double f_eval(const FFunction& f, double t);

}  // namespace qig
