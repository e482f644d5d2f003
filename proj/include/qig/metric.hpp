#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qig/charts.hpp"
#include "qig/ffunctions.hpp"

namespace qig {

inline constexpr double kEigCut = 1e-9;      // Hubner denominator cutoff
inline constexpr double kNullTol = 1e-8;     // nullity: det <= tol * prod(diag)
inline constexpr double kHsKappa = 0.5;      // HS convention g = kappa tr(d rho d rho)

struct MetricTensor {
    RMat g;
    std::vector<std::string> coords;

    int dim() const { return static_cast<int>(g.rows()); }
};

struct VolumeElement {
    double value = 0.0;
    bool null_flag = false;
};

struct Differential {
    CMat d;
    bool one_sided = false;  // stencil clipped at the feasible boundary
};

/// d rho / d p_i. Uses the chart's analytic derivative when present,
/// otherwise a 4th-order central stencil (Richardson), falling back to a
/// one-sided stencil near the feasible boundary.
Differential numeric_differential(const FamilyChart& chart, const ParamPoint& p,
                                  int direction, double h = 0.0);

/// Guarded (default) tensors follow the contract: pairs with
/// lambda_a + lambda_b <= eig_cut are dropped, and a dropped pair carrying
/// numerator above 1e-6 throws DegenerateState. Region integration disables
/// the guard: near the feasible boundary monotone metrics diverge integrably
/// and the raw pair sum is the correct (large, finite) value.
struct TensorOptions {
    double eig_cut = kEigCut;
    bool guard = true;
};

/// Bures tensor from the eigensystem pair sum.
MetricTensor bures_tensor(const FamilyChart& chart, const ParamPoint& p,
                          const TensorOptions& opt = {});

/// Monotone metric with Morozova-Chentsov weights c(x,y) = 1/(y f(x/y)),
/// normalized so f = bures reproduces bures_tensor.
MetricTensor monotone_tensor(const FamilyChart& chart, const ParamPoint& p,
                             const FFunction& f, const TensorOptions& opt = {});

/// Hilbert-Schmidt tensor, g_ij = kHsKappa * Re tr(d_i rho d_j rho).
MetricTensor hs_tensor(const FamilyChart& chart, const ParamPoint& p);

VolumeElement volume_element(const MetricTensor& g);

/// True iff the volume element is null at every one of n_samples random
/// interior points (deterministic sampling).
bool nullity_check(const FamilyChart& chart, const std::string& metric_id,
                   int n_samples = 30, std::uint64_t seed = 20260809);

// ---- closed-form tensors and elements -------------------------------------

enum class ClosedForm {
    bloch_bures,                // 3x3 in (r, th1, th2)
    extended_bures,             // 4x4 in (r, th1, th2, q), null volume
    extended_bures_truncated,   // dq dr entry set to zero
    extended_bures_q1,          // 4x4 at q=1
    extended_bures_q1_truncated,
    qutrit_bures,               // 4x4 in (v, r, th1, th2)
    ar_q1,                      // 3x3 in (b, sigma2, q) evaluated at q=1
};

MetricTensor closed_form_tensor(ClosedForm model, const ParamPoint& p);

/// Tangential coefficient of the q-extended 3x3-family Bures metric, as the
/// factor multiplying dn^2 = r^2 (unit-sphere metric); reduces to 1/(4v) at
/// q=1.
double qutrit_q_tangential(double v, double r, double q);

/// AR Bures area elements in (b, sigma2).
double ar_volume_element_q1(double b, double sigma2);
double ar_volume_element(double b, double sigma2, double q);

/// Bures area element of the alpha-model at fixed alpha.
double trivariate_bures_element(double b, double sigma2, double alpha);

/// Truncated q-extended Bures volume element over the Bloch ball
/// (radial factor; multiply by sin th1 for the (r,th1,th2) density).
/// The _omr form takes 1-r exactly, needed near the r=1 edge for q < 1.
double bures_trunc_element(double r, double q);
double bures_trunc_element_omr(double one_minus_r, double q);

/// Exact Bloch-ball integral of the truncated element at fixed q:
/// pi (1 + log 4) / (24 q).
double bures_trunc_ball_integral(double q);

/// Antiderivative in q of the truncated-element ball integral's 2D
/// (q, r)-marginal integrand; differences give the r-marginal.
double bures_trunc_q_antiderivative(double r, double q);

}  // namespace qig
