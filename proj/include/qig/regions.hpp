#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qig/charts.hpp"
#include "qig/metric.hpp"
#include "qig/quadrature.hpp"

namespace qig {

enum class MetricId { bures, hs, wigner_yanase };
enum class Predicate { feasible, separable, entangled };

MetricId metric_from_string(const std::string& s);
std::string to_string(MetricId m);

/// A chart together with a membership predicate over its bounding box.
struct Region {
    std::vector<std::pair<double, double>> box;
    std::function<bool(const ParamPoint&)> inside;
};

Region region_for(const FamilyChart& chart, Predicate pred, double tol_psd = kPsdTol);

/// Deterministic region integration: iterated adaptive/tanh-sinh cubature for
/// dim <= 3 (predicate handled by jump location along the innermost axis),
/// stratified antithetic Monte Carlo for higher dimensions. Throws
/// NonConvergence past the evaluation budget.
QuadratureResult integrate(const Region& region,
                           const std::function<double(const ParamPoint&)>& integrand,
                           double tol, std::uint64_t seed = 0,
                           std::int64_t max_evals = 100'000'000);

/// Metric volume element at a chart point, computed through the numeric
/// tensor machinery (unguarded near region boundaries, where monotone
/// elements diverge integrably).
double metric_element(const FamilyChart& chart, MetricId metric, const ParamPoint& p);

// ---- separability-probability models --------------------------------------

/// Families with volume drivers. `fixed` is q for ar_bell, alpha for the
/// alpha-models, ignored for jaynes_one_param and tlb.
enum class ModelId { ar_bell, trivariate, bivariate, jaynes_one_param, tlb };

ModelId model_from_string(const std::string& s);
std::string to_string(ModelId m);

QuadratureResult total_volume(ModelId model, MetricId metric, double fixed,
                              double tol = 1e-6, std::uint64_t seed = 0);
QuadratureResult separable_volume(ModelId model, MetricId metric, double fixed,
                                  double tol = 1e-6, std::uint64_t seed = 0);

struct SepProb {
    QuadratureResult total;
    QuadratureResult separable;
    double prob = 0.0;
    double prob_err = 0.0;
};

SepProb sep_probability(ModelId model, MetricId metric, double fixed,
                        double tol = 1e-6, std::uint64_t seed = 0);

/// Piecewise-exact Hilbert-Schmidt separability probabilities.
enum class CfModel { trivariate_alpha, bivariate_alpha };
double closed_form_sepprob(CfModel model, double alpha);

/// Exact HS totals of the alpha-models (signed formal values made positive).
double trivariate_hs_total(double alpha);
double bivariate_hs_total(double alpha);

struct ScanRow {
    double param = 0.0;
    std::string metric;
    SepProb result;
};

/// Volume/probability scan over a parameter grid (parallel over grid points,
/// deterministic per-point seeds). Per-point failures are recorded as NaN
/// rows, not fatal.
std::vector<ScanRow> scan(ModelId model, MetricId metric,
                          const std::vector<double>& grid,
                          double tol = 1e-4, std::uint64_t seed = 0);

std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace qig
