#include "qig/regions.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

namespace qig {

namespace {

const double kC = 2.0 * std::sqrt(2.0);
const double kRt2 = std::sqrt(2.0);

}  // namespace

MetricId metric_from_string(const std::string& s) {
    if (s == "bures") return MetricId::bures;
    if (s == "hs" || s == "hilbert_schmidt") return MetricId::hs;
    if (s == "wigner_yanase" || s == "wy") return MetricId::wigner_yanase;
    throw DomainError("unknown metric: " + s);
}

std::string to_string(MetricId m) {
    switch (m) {
        case MetricId::bures: return "bures";
        case MetricId::hs: return "hs";
        case MetricId::wigner_yanase: return "wigner_yanase";
    }
    return "?";
}

ModelId model_from_string(const std::string& s) {
    if (s == "ar_bell" || s == "ar") return ModelId::ar_bell;
    if (s == "trivariate" || s == "jaynes_alpha") return ModelId::trivariate;
    if (s == "bivariate" || s == "jaynes_alpha_bivariate") return ModelId::bivariate;
    if (s == "jaynes" || s == "jaynes_one_param") return ModelId::jaynes_one_param;
    if (s == "tlb") return ModelId::tlb;
    throw DomainError("unknown model: " + s);
}

std::string to_string(ModelId m) {
    switch (m) {
        case ModelId::ar_bell: return "ar_bell";
        case ModelId::trivariate: return "trivariate";
        case ModelId::bivariate: return "bivariate";
        case ModelId::jaynes_one_param: return "jaynes_one_param";
        case ModelId::tlb: return "tlb";
    }
    return "?";
}

Region region_for(const FamilyChart& chart, Predicate pred, double tol_psd) {
    Region r;
    r.box = chart.bounding_box;
    auto feas = chart.feasible;
    auto build = chart.build_raw;
    switch (pred) {
        case Predicate::feasible:
            r.inside = feas;
            break;
        case Predicate::separable:
            r.inside = [feas, build, tol_psd](const ParamPoint& p) {
                return feas(p) && is_separable(build(p), tol_psd);
            };
            break;
        case Predicate::entangled:
            r.inside = [feas, build, tol_psd](const ParamPoint& p) {
                return feas(p) && !is_separable(build(p), tol_psd);
            };
            break;
    }
    return r;
}

double metric_element(const FamilyChart& chart, MetricId metric, const ParamPoint& p) {
    TensorOptions opt;
    opt.guard = false;  // boundary divergence is integrable; keep the raw sum
    MetricTensor g;
    switch (metric) {
        case MetricId::bures: g = bures_tensor(chart, p, opt); break;
        case MetricId::hs: g = hs_tensor(chart, p); break;
        case MetricId::wigner_yanase: g = monotone_tensor(chart, p, f_wigner_yanase(), opt); break;
    }
    return volume_element(g).value;
}

// ---- generic region integration -------------------------------------------

namespace {

struct EvalBudget {
    std::atomic<std::int64_t> used{0};
    std::int64_t cap;
    explicit EvalBudget(std::int64_t c) : cap(c) {}
    void charge(std::int64_t n) {
        if ((used += n) > cap) throw NonConvergence("evaluation budget exhausted");
    }
};

// innermost axis: indicator-aware tanh-sinh pieces
QuadratureResult inner_1d(const std::function<double(double)>& f,
                          const std::function<bool(double)>& inside,
                          double a, double b, double tol, EvalBudget& budget) {
    auto r = integrate_indicator(f, inside, a, b, tol);
    budget.charge(r.n_evals);
    return r;
}

}  // namespace

QuadratureResult integrate(const Region& region,
                           const std::function<double(const ParamPoint&)>& integrand,
                           double tol, std::uint64_t seed, std::int64_t max_evals) {
    const int dim = static_cast<int>(region.box.size());
    EvalBudget budget(max_evals);

    if (dim >= 4) {
        McOptions opt;
        opt.seed = seed;
        opt.n_samples = 2'000'000;
        auto f = [&](const std::vector<double>& x) {
            return region.inside(x) ? integrand(x) : 0.0;
        };
        return integrate_mc(f, region.box, opt);
    }

    if (dim == 1) {
        return inner_1d([&](double x) { return integrand({x}); },
                        [&](double x) { return region.inside({x}); },
                        region.box[0].first, region.box[0].second, tol, budget);
    }

    if (dim == 2) {
        auto F = [&](double x0) {
            return inner_1d([&](double x1) { return integrand({x0, x1}); },
                            [&](double x1) { return region.inside({x0, x1}); },
                            region.box[1].first, region.box[1].second, tol * 0.1, budget)
                .value;
        };
        auto out = integrate_adaptive(F, region.box[0].first, region.box[0].second,
                                      tol, tol, 1500);
        out.n_evals = budget.used.load();
        return out;
    }

    // dim == 3
    auto F0 = [&](double x0) {
        auto F1 = [&](double x1) {
            return inner_1d([&](double x2) { return integrand({x0, x1, x2}); },
                            [&](double x2) { return region.inside({x0, x1, x2}); },
                            region.box[2].first, region.box[2].second, tol * 0.02, budget)
                .value;
        };
        return integrate_adaptive(F1, region.box[1].first, region.box[1].second,
                                  tol * 0.1, tol * 0.5, 400)
            .value;
    };
    auto out = integrate_adaptive(F0, region.box[0].first, region.box[0].second,
                                  tol, tol, 400);
    out.n_evals = budget.used.load();
    return out;
}

// ---- model drivers ---------------------------------------------------------

namespace {

// common 2D driver over (s outer, b inner) for the Bell-diagonal alpha/AR
// models on the box 0 <= b <= s/(2 sqrt 2), 0 <= s <= 8. The outer variable
// is t with s = 8 - t^2, absorbing the (8 - s)-edge singularity of the
// monotone elements.
QuadratureResult bell2d_volume(const FamilyChart& chart, MetricId metric,
                               bool separable, double tol, std::int64_t max_evals) {
    EvalBudget budget(max_evals);
    auto F = [&](double t) {
        const double s = 8.0 - t * t;
        const double bmax = s / kC;
        if (bmax <= 0.0) return 0.0;
        auto f = [&](double b) { return metric_element(chart, metric, {b, s}); };
        std::function<bool(double)> inside;
        if (separable) {
            auto build = chart.build_raw;
            inside = [build, s](double b) { return is_separable(build({b, s})); };
        } else {
            inside = [](double) { return true; };
        }
        return inner_1d(f, inside, 0.0, bmax, tol * 0.05, budget).value * 2.0 * t;
    };
    auto out = integrate_adaptive(F, 0.0, std::sqrt(8.0), tol * 0.5, tol, 1500);
    out.n_evals = budget.used.load();
    return out;
}

// 1D driver along the single-constraint curve (induced metric)
QuadratureResult jaynes1_volume(MetricId metric, bool separable, double tol) {
    const FamilyChart chart = jaynes_alpha_bivariate(1.0);
    EvalBudget budget(50'000'000);
    auto f = [&](double b) { return metric_element(chart, metric, {b}); };
    std::function<bool(double)> inside;
    if (separable) {
        auto build = chart.build_raw;
        inside = [build](double b) { return is_separable(build({b})); };
    } else {
        inside = [](double) { return true; };
    }
    return inner_1d(f, inside, 0.0, kC, tol, budget);
}

// bivariate model: constant element sqrt(g^HS_bb at fixed sigma2), uniform in b
QuadratureResult bivariate_volume(double alpha, bool separable, double tol) {
    const FamilyChart tri = jaynes_alpha(alpha);
    // the fixed-sigma2 b-coefficient is b- and sigma2-independent; evaluate
    // once mid-box
    const double elem = std::sqrt(hs_tensor(tri, {0.7, 5.0}).g(0, 0));
    const FamilyChart curve = jaynes_alpha_bivariate(alpha);
    EvalBudget budget(50'000'000);
    auto f = [&](double) { return elem; };
    std::function<bool(double)> inside;
    if (separable) {
        auto build = curve.build_raw;
        inside = [build](double b) { return is_separable(build({b})); };
    } else {
        inside = [](double) { return true; };
    }
    return inner_1d(f, inside, 0.0, kC, tol, budget);
}

// TLB: Bures/WY on the 3-sphere orthant chart, HS on the (x,y,z) tetrahedron
QuadratureResult tlb_volume(MetricId metric, bool separable, double tol,
                            std::int64_t max_evals) {
    const FamilyChart chart = (metric == MetricId::hs) ? tlb() : tlb_angles();
    Region region = region_for(chart, separable ? Predicate::separable : Predicate::feasible);
    auto integrand = [&](const ParamPoint& p) { return metric_element(chart, metric, p); };
    return integrate(region, integrand, tol, 0, max_evals);
}

}  // namespace

QuadratureResult total_volume(ModelId model, MetricId metric, double fixed,
                              double tol, std::uint64_t seed) {
    (void)seed;
    switch (model) {
        case ModelId::ar_bell:
            return bell2d_volume(ar_bell_at(fixed), metric, false, tol, 100'000'000);
        case ModelId::trivariate:
            return bell2d_volume(jaynes_alpha(fixed), metric, false, tol, 100'000'000);
        case ModelId::bivariate:
            if (metric != MetricId::hs)
                throw DomainError("bivariate model volumes are defined for the HS metric");
            return bivariate_volume(fixed, false, tol);
        case ModelId::jaynes_one_param:
            return jaynes1_volume(metric, false, tol);
        case ModelId::tlb:
            return tlb_volume(metric, false, tol, 200'000'000);
    }
    throw DomainError("unknown model");
}

QuadratureResult separable_volume(ModelId model, MetricId metric, double fixed,
                                  double tol, std::uint64_t seed) {
    (void)seed;
    switch (model) {
        case ModelId::ar_bell:
            return bell2d_volume(ar_bell_at(fixed), metric, true, tol, 100'000'000);
        case ModelId::trivariate:
            return bell2d_volume(jaynes_alpha(fixed), metric, true, tol, 100'000'000);
        case ModelId::bivariate:
            if (metric != MetricId::hs)
                throw DomainError("bivariate model volumes are defined for the HS metric");
            return bivariate_volume(fixed, true, tol);
        case ModelId::jaynes_one_param:
            return jaynes1_volume(metric, true, tol);
        case ModelId::tlb:
            return tlb_volume(metric, true, tol, 200'000'000);
    }
    throw DomainError("unknown model");
}

SepProb sep_probability(ModelId model, MetricId metric, double fixed,
                        double tol, std::uint64_t seed) {
    SepProb out;
    out.total = total_volume(model, metric, fixed, tol, seed);
    out.separable = separable_volume(model, metric, fixed, tol, seed);
    if (std::abs(out.total.value) <= 3.0 * out.total.abs_error)
        throw DegenerateTotal("total volume consistent with zero");
    out.prob = out.separable.value / out.total.value;
    out.prob_err = std::abs(out.prob) *
                   (out.separable.abs_error / std::max(std::abs(out.separable.value), 1e-300) +
                    out.total.abs_error / std::abs(out.total.value));
    return out;
}

// ---- closed-form piecewise results -----------------------------------------

double trivariate_hs_total(double alpha) {
    return 1.0 / (2.0 * kRt2 * std::abs(alpha * (1.0 + alpha)));
}

double bivariate_hs_total(double alpha) {
    const double a2 = alpha * alpha;
    return 2.0 * std::sqrt(3.0 * a2 * a2 - 2.0 * a2 + 3.0) /
           (4.0 * std::abs(a2 + alpha));
}

double closed_form_sepprob(CfModel model, double alpha) {
    const double a = alpha;
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    if (model == CfModel::trivariate_alpha) {
        if (a == 0.0 || a == -1.0) return 0.0;
        if (a >= 1.0) return 0.75 - 0.25 / a;
        if (a > 0.0) {
            // includes the printed golden-ratio point value, which equals the
            // branch limit -(1/8)(sqrt5-5) a(a+1)
            return -0.25 * (a - 2.0) * a * (a + 1.0);
        }
        if (a > -1.0) return -0.25 * a * (a + 1.0);
        if (a <= -std::sqrt(3.0)) return -0.25 / a + 0.75 + 1.0 / (a - 1.0);
        // -sqrt3 < a < -1, includes the a = -sqrt2 printed point value
        const double a2 = a * a;
        return -(a + 1.0) * (a2 * a2 - 5.0 * a2 + 1.0) / (4.0 * a);
    }
    // bivariate
    const double cut = (1.0 - 2.0 * std::sqrt(7.0)) / 3.0;
    if (a >= -1.0 && a <= 1.0 / 3.0) return 0.0;
    if (a >= golden || a > 1.0 / 3.0) {
        const double s1 = std::sqrt(a * (a + 1.0));
        if (a >= golden) return s1 - a;
        return -a + 2.0 * s1 - 1.0;
    }
    if (a > cut) return -a - 1.0;  // cut < a < -1
    return std::sqrt((a - 2.0) * a) - std::sqrt(a * (a + 1.0)) - 1.0;
}

// ---- scan -------------------------------------------------------------------

std::vector<ScanRow> scan(ModelId model, MetricId metric,
                          const std::vector<double>& grid,
                          double tol, std::uint64_t seed) {
    std::vector<ScanRow> rows(grid.size());
    parallel_for_blocks(static_cast<std::int64_t>(grid.size()), default_threads(),
        [&](std::int64_t lo, std::int64_t hi, int) {
            for (std::int64_t i = lo; i < hi; ++i) {
                rows[i].param = grid[i];
                rows[i].metric = to_string(metric);
                try {
                    rows[i].result = sep_probability(model, metric, grid[i], tol,
                                                     seed + static_cast<std::uint64_t>(i));
                } catch (const Error&) {
                    rows[i].result.prob = std::nan("");  // recorded, not fatal
                }
            }
        });
    return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os.precision(10);
    os << "param,metric,total,total_err,sep,sep_err,prob,prob_err,n_evals\n";
    for (const auto& r : rows) {
        os << r.param << ',' << r.metric << ',' << r.result.total.value << ','
           << r.result.total.abs_error << ',' << r.result.separable.value << ','
           << r.result.separable.abs_error << ',' << r.result.prob << ','
           << r.result.prob_err << ',' << r.result.total.n_evals + r.result.separable.n_evals
           << '\n';
    }
    return os.str();
}

}  // namespace qig
