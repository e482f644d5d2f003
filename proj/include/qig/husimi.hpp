#pragma once

#include <array>

#include "qig/density.hpp"
#include "qig/metric.hpp"
#include "qig/quadrature.hpp"

namespace qig {

/// Husimi density of a qubit state at sphere direction omega (unit vector),
/// normalized so that the integral over solid angle is 1.
double husimi(const DensityMatrix& rho, const std::array<double, 3>& omega);

/// Escort Husimi density in the paper's spherical chart, normalized over
/// solid angle; q=1 recovers husimi. q in [1/2, 500].
double escort_husimi(double q, double r, double th1, double th2,
                     const std::array<double, 3>& omega);

/// Fisher components of the escort-Husimi family at (r, q). The azimuthal
/// reduction is exact; the remaining 1D integrals are adaptive.
/// tang is the coefficient of the unit-sphere (direction) metric.
struct HusimiFisher {
    double g_qq, g_rr, g_qr, tang;
};
HusimiFisher husimi_fisher_components(double r, double q, double tol = 1e-10);

/// Full 3x3 (or 4x4 with q-row) Fisher tensor at (r, th1, th2[, q]) by sphere
/// quadrature with refinement; throws QuadratureFailure if refinement does
/// not stabilize to 1e-7.
MetricTensor fisher_tensor_numeric(const ParamPoint& p, bool extended_q);

/// Closed-form 3D Fisher-Husimi tensor (q=1).
MetricTensor husimi_q1_tensor(const ParamPoint& p);

/// Closed-form 4D extended Fisher tensor at q=1 (non-null volume element).
MetricTensor extended_fisher_q1_tensor(const ParamPoint& p);

// radial factors of the 3D / 4D volume elements (multiply by sin th1)
double husimi_elem3(double r);
double husimi_elem4_q1(double r);

/// Normalization constants of the 3D and 4D (q=1) priors: ball integrals of
/// the elements (computed once, cached).
double husimi_norm3();
double husimi_norm4_q1();

/// Marginal volume element of the 4D escort-Husimi metric over q (angles and
/// radius integrated out).
QuadratureResult marginal_q(double q, double tol = 1e-7);

/// Marginal over r: q integrated over [1/2, 500].
QuadratureResult marginal_r(double r, double tol = 1e-6);

/// Locate the peak of marginal_q on [2, 6] (golden-section search).
std::pair<double, double> marginal_q_peak();

}  // namespace qig
