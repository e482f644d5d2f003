#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qig/density.hpp"

namespace qig {

using ParamPoint = std::vector<double>;

inline constexpr double kFeasTol = 1e-10;  // boundary points count as feasible

/// A named parameterization: point -> density matrix, plus feasibility
/// predicate and bounding box. `build_raw` produces the formal matrix with
/// no validity checks (used by region integration, where some models admit
/// formal non-states); `build_state` validates.
struct FamilyChart {
    std::string family_id;
    std::vector<std::string> param_names;
    std::vector<std::pair<double, double>> bounding_box;

    std::function<CMat(const ParamPoint&)> build_raw;
    std::function<bool(const ParamPoint&)> feasible;
    // optional: analytic d rho / d p_i; empty when only stencils are available
    std::function<CMat(const ParamPoint&, int)> analytic_diff;

    int dim() const { return static_cast<int>(param_names.size()); }
    bool in_box(const ParamPoint& p) const;
};

DensityMatrix build_state(const FamilyChart& chart, const ParamPoint& p);

// ---- chart factories ---------------------------------------------------

/// Bloch ball qubit in spherical coordinates (r, th1, th2):
/// x = r cos th1, y = r sin th1 cos th2, z = r sin th1 sin th2.
FamilyChart bloch_qubit();

/// Escort family (r, th1, th2, q): componentwise q-th power of the qubit
/// state, renormalized. q in [1/2, 500].
FamilyChart escort_qubit();

/// 3x3 family (v, r, th1, th2) with r <= v <= 1.
FamilyChart qutrit_v();

/// Escort q-extension of the 3x3 family: (v, r, th1, th2, q).
FamilyChart qutrit_v_q();

/// Abe-Rajagopal two-qubit states (b, sigma2, q): Bell-diagonal weights
/// proportional to (sigma2+2sqrt2 b)^(1/q), (sigma2-2sqrt2 b)^(1/q) and two
/// copies of (8-sigma2)^(1/q).
FamilyChart ar_bell();

/// AR states at fixed q, coordinates (b, sigma2).
FamilyChart ar_bell_at(double q);

/// Maximum-entropy states for the generalized observable
/// B_alpha = 2sqrt2(|Phi+><Phi+| - alpha |Psi-><Psi-|), constraining the
/// first two moments: coordinates (b, sigma2) at fixed alpha.
FamilyChart jaynes_alpha(double alpha);

/// One-parameter section sigma2 = 4(1 + b^2/8) of jaynes_alpha, coordinate b.
FamilyChart jaynes_alpha_bivariate(double alpha);

/// Tsallis-Lloyd-Baranger states (x, y, z): Bell weights
/// ((1-x)/4, (1-y)/4, (1-z)/4, (1+x+y+z)/4).
FamilyChart tlb();

/// Escort q-extension of the TLB weights: (x, y, z, q).
FamilyChart tlb_escort();

/// TLB states in 3-sphere angles (t1, t2, t3) on the positive orthant;
/// weights are the squared sphere coordinates.
FamilyChart tlb_angles();

// ---- Bell-diagonal weight helpers (formal, no feasibility requirement) ---

Eigen::Vector4d ar_weights(double b, double sigma2, double q);
Eigen::Vector4d jaynes_weights(double b, double sigma2, double alpha);
Eigen::Vector4d tlb_weights(double x, double y, double z);

// analytic weight derivatives
void ar_weight_derivs(double b, double sigma2, double q,
                      Eigen::Vector4d& db, Eigen::Vector4d& ds);
void jaynes_weight_derivs(double alpha, Eigen::Vector4d& db, Eigen::Vector4d& ds);

/// Map AR parameters at q=1/2 to the q=1 parameters of the same state.
std::pair<double, double> reparameterize_ar(double b_half, double sigma2_half);

/// Escort map on states: rho^q / tr(rho^q).
DensityMatrix escort_state(const DensityMatrix& rho, double q);

}  // namespace qig
