#pragma once

#include <array>
#include <functional>
#include <string>

#include "qig/quadrature.hpp"

namespace qig {

enum class PriorId { p_B, p_Bq1trunc, p_F, p_Fq1, uniform_ball };

PriorId prior_from_string(const std::string& s);
std::string to_string(PriorId id);

/// Normalized density over the open Bloch ball in spherical coordinates,
/// with respect to dr dth1 dth2.
struct PriorDensity {
    std::string id;
    std::function<double(double r, double th1, double th2)> density;
    double normalization = 1.0;  // constant the raw element was divided by
};

PriorDensity prior(PriorId id);
double prior_eval(PriorId id, double r, double th1, double th2);

/// Spin measurement counts along the x, y, z axes.
struct MeasurementRecord {
    std::array<int, 3> up{0, 0, 0};
    std::array<int, 3> down{0, 0, 0};
    bool q_extended = false;
};

MeasurementRecord canonical_record();  // one up + one down per axis

/// Product of Bernoulli outcome probabilities (1 +- a_i)/2 at Bloch
/// components (x, y, z); the q-extended variant rescales components by the
/// escort radius ratio R_q(r)/r.
double likelihood(const MeasurementRecord& rec, double x, double y, double z,
                  double q = 1.0);

PriorDensity posterior(const PriorDensity& pr, const MeasurementRecord& rec,
                       double power);

/// Relative entropy in nats; quadrature to ~1e-5 absolute.
double kl(const PriorDensity& p, const PriorDensity& q);

struct Verdict {
    std::string more_noninformative;  // prior id or "undecided"
    double kl_ab, kl_ba, kl_post_ab, kl_post_ba;
};

/// Comparative noninformativity: a wins when the formal sqrt-likelihood
/// posterior of a moves toward b while b's moves away from a.
Verdict clarke_compare(const PriorDensity& a, const PriorDensity& b,
                       const MeasurementRecord& rec);

struct CurvePoint {
    double r, value;
};

/// Univariate marginal density over r (angles integrated out).
std::vector<CurvePoint> biasedness_curve(PriorId id, double r_lo, double r_hi, int n);

/// KL(posterior || prior) with the unit-power posterior.
double information_gain(const PriorDensity& pr, const MeasurementRecord& rec);

/// Truncated q-extended Bures prior over ball x [q_lo, q_hi] and its
/// information gains under the q-extended likelihood.
struct QTruncatedPrior {
    double q_lo, q_hi;
    double normalization;  // pi(1+log4)/24 * log(q_hi/q_lo)
    std::function<double(double r, double th1, double th2, double q)> density;
};

QTruncatedPrior q_truncated_prior(double q_lo = 0.5, double q_hi = 500.0);
double q_extended_gain(const QTruncatedPrior& pr, const MeasurementRecord& rec,
                       double tol = 1e-9);

}  // namespace qig
