#include "qig/metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace qig {

namespace {

// largest step keeping the full 2h-stencil inside box and feasible set
double safe_step(const FamilyChart& chart, const ParamPoint& p, int i, double h0) {
    auto ok = [&](double h) {
        ParamPoint q = p;
        for (double s : {-2.0, -1.0, 1.0, 2.0}) {
            q[i] = p[i] + s * h;
            if (!chart.in_box(q) || !chart.feasible(q)) return false;
        }
        return true;
    };
    double h = h0;
    for (int k = 0; k < 40 && !ok(h); ++k) h *= 0.5;
    return ok(h) ? h : 0.0;
}

}  // namespace

Differential numeric_differential(const FamilyChart& chart, const ParamPoint& p,
                                  int direction, double h_in) {
    if (direction < 0 || direction >= chart.dim())
        throw DomainError("differential direction out of range");
    if (chart.analytic_diff) return {chart.analytic_diff(p, direction), false};

    const double span = chart.bounding_box[direction].second - chart.bounding_box[direction].first;
    const double scale = std::max(std::abs(p[direction]), 0.1 * span);
    double h = h_in > 0.0 ? h_in : 1e-4 * scale;

    const double hs = safe_step(chart, p, direction, h);
    if (hs > 0.0) {
        h = hs;
        ParamPoint q = p;
        auto at = [&](double step) {
            q[direction] = p[direction] + step;
            return chart.build_raw(q);
        };
        // 4th-order central difference (Richardson over the +-h, +-2h stencil)
        CMat d = (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
        return {std::move(d), false};
    }

    // one-sided second-order fallback, flagged
    auto side_ok = [&](double sgn, double hh) {
        ParamPoint q = p;
        for (double s : {1.0, 2.0}) {
            q[direction] = p[direction] + sgn * s * hh;
            if (!chart.in_box(q) || !chart.feasible(q)) return false;
        }
        return true;
    };
    for (double sgn : {1.0, -1.0}) {
        double hh = h;
        for (int k = 0; k < 40 && !side_ok(sgn, hh); ++k) hh *= 0.5;
        if (side_ok(sgn, hh)) {
            ParamPoint q = p;
            auto at = [&](double step) {
                q[direction] = p[direction] + step;
                return chart.build_raw(q);
            };
            CMat d = sgn * (-3.0 * at(0.0) + 4.0 * at(sgn * hh) - at(sgn * 2.0 * hh)) / (2.0 * hh);
            return {std::move(d), true};
        }
    }
    throw BoundaryPoint("no valid stencil at this point");
}

namespace {

MetricTensor pairsum_tensor(const FamilyChart& chart, const ParamPoint& p,
                            const std::function<double(double, double)>& weight,
                            const TensorOptions& opt) {
    const int np = chart.dim();
    const CMat rho = chart.build_raw(p);
    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    const RVec lam = es.eigenvalues();
    const CMat& V = es.eigenvectors();

    std::vector<CMat> dd(np);
    for (int i = 0; i < np; ++i)
        dd[i] = V.adjoint() * numeric_differential(chart, p, i).d * V;

    const double cut = opt.guard ? opt.eig_cut : 1e-280;
    const int n = static_cast<int>(lam.size());
    MetricTensor out;
    out.coords = chart.param_names;
    out.g = RMat::Zero(np, np);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (lam(a) + lam(b) <= cut) {
                if (opt.guard) {
                    for (int i = 0; i < np; ++i) {
                        if (std::abs(dd[i](a, b)) > 1e-6)
                            throw DegenerateState(
                                "eigenvalue pair below cutoff carries non-negligible numerator");
                    }
                }
                continue;
            }
            const double w = weight(std::max(lam(a), 0.0), std::max(lam(b), 0.0));
            if (!std::isfinite(w)) continue;
            for (int i = 0; i < np; ++i)
                for (int j = i; j < np; ++j)
                    out.g(i, j) += w * (dd[i](a, b) * dd[j](b, a)).real();
        }
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < i; ++j) out.g(i, j) = out.g(j, i);
    return out;
}

}  // namespace

MetricTensor bures_tensor(const FamilyChart& chart, const ParamPoint& p,
                          const TensorOptions& opt) {
    return pairsum_tensor(chart, p,
                          [](double a, double b) { return 0.5 / (a + b); }, opt);
}

MetricTensor monotone_tensor(const FamilyChart& chart, const ParamPoint& p,
                             const FFunction& f, const TensorOptions& opt) {
    return pairsum_tensor(chart, p,
                          [&f](double a, double b) {
                              // symmetrized MC weight; c(a,b)=1/(b f(a/b)) with a<=b
                              const double lo = std::min(a, b), hi = std::max(a, b);
                              if (hi <= 0.0) return 0.0;
                              return 0.25 / (hi * f.eval(std::max(lo, 1e-300) / hi));
                          },
                          opt);
}

MetricTensor hs_tensor(const FamilyChart& chart, const ParamPoint& p) {
    const int np = chart.dim();
    std::vector<CMat> d(np);
    for (int i = 0; i < np; ++i) d[i] = numeric_differential(chart, p, i).d;
    MetricTensor out;
    out.coords = chart.param_names;
    out.g = RMat::Zero(np, np);
    for (int i = 0; i < np; ++i)
        for (int j = i; j < np; ++j) {
            out.g(i, j) = kHsKappa * (d[i].adjoint() * d[j]).trace().real();
            out.g(j, i) = out.g(i, j);
        }
    return out;
}

VolumeElement volume_element(const MetricTensor& t) {
    const double det = t.g.determinant();
    double scale = 1.0;
    for (int i = 0; i < t.dim(); ++i) scale *= std::max(t.g(i, i), 0.0);
    VolumeElement v;
    v.value = std::sqrt(std::max(det, 0.0));
    v.null_flag = det <= kNullTol * scale;
    return v;
}

bool nullity_check(const FamilyChart& chart, const std::string& metric_id,
                   int n_samples, std::uint64_t seed) {
    if (n_samples < 30) throw DomainError("nullity_check needs >= 30 samples");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    int found = 0;
    while (found < n_samples) {
        ParamPoint p(chart.dim());
        for (int i = 0; i < chart.dim(); ++i) {
            auto [lo, hi] = chart.bounding_box[i];
            if (chart.param_names[i] == "q") hi = std::min(hi, 3.0);  // sample a sane q range
            p[i] = lo + uni(rng) * (hi - lo);
        }
        if (!chart.feasible(p)) continue;
        // keep clear of the boundary so central stencils stay feasible
        bool interior = true;
        for (int i = 0; i < chart.dim() && interior; ++i) {
            ParamPoint q = p;
            const double eps = 1e-3 * (chart.bounding_box[i].second - chart.bounding_box[i].first);
            q[i] = p[i] + eps;
            interior = chart.feasible(q);
            q[i] = p[i] - eps;
            interior = interior && chart.feasible(q);
        }
        if (!interior) continue;
        ++found;
        MetricTensor g;
        if (metric_id == "bures")
            g = bures_tensor(chart, p);
        else if (metric_id == "hs")
            g = hs_tensor(chart, p);
        else if (metric_id == "wigner_yanase")
            g = monotone_tensor(chart, p, f_wigner_yanase());
        else
            throw DomainError("unknown metric id: " + metric_id);
        if (!volume_element(g).null_flag) return false;
    }
    return true;
}

}  // namespace qig
