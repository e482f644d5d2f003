#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qig/errors.hpp"

namespace qig {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::int64_t n_evals = 0;
    std::string method;  // "cubature" or "monte_carlo"
};

using Fn1 = std::function<double(double)>;

/// Gauss-Legendre nodes/weights on [-1, 1] (cached per n).
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

/// Heap-based adaptive Gauss-Kronrod (G7K15). Handles interior jumps and
/// integrable endpoint singularities via geometric refinement.
QuadratureResult integrate_adaptive(const Fn1& f, double a, double b,
                                    double abs_tol = 1e-10, double rel_tol = 1e-9,
                                    int max_intervals = 4000);

/// tanh-sinh (double exponential) rule; excellent for integrands with
/// algebraic or logarithmic endpoint singularities. Integrand must be
/// smooth in the open interval.
QuadratureResult integrate_tanh_sinh(const Fn1& f, double a, double b,
                                     double tol = 1e-11, int max_level = 12);

/// Adaptive integration after locating sign changes of `inside` along
/// [a, b]: each inside-piece is integrated with tanh-sinh (piece edges get
/// DE treatment, which also absorbs the region-boundary singularities).
QuadratureResult integrate_indicator(const Fn1& f, const std::function<bool(double)>& inside,
                                     double a, double b, double tol, int scan_n = 48);

// ---- Monte Carlo ---------------------------------------------------------

struct McOptions {
    std::uint64_t seed = 0;
    std::int64_t n_samples = 1'000'000;
    int strata_per_dim = 8;   // stratified over the box
    bool antithetic = true;
};

/// Stratified Monte Carlo over a box; deterministic for a fixed seed
/// (partitioning independent of thread count). abs_error = 3x standard error.
QuadratureResult integrate_mc(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<std::pair<double, double>>& box,
                              const McOptions& opt);

/// Deterministic parallel map-reduce over fixed index blocks.
void parallel_for_blocks(std::int64_t n_items, int n_threads,
                         const std::function<void(std::int64_t, std::int64_t, int)>& work);

int default_threads();
void set_default_threads(int n);

}  // namespace qig
