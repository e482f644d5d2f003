#include "qig/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "qig/charts.hpp"
#include "qig/husimi.hpp"
#include "qig/metric.hpp"
#include "qig/priors.hpp"
#include "qig/regions.hpp"

namespace qig {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kRt2 = std::sqrt(2.0);
const double kC = 2.0 * kRt2;

struct Checker {
    bool ok = true;
    std::ostringstream detail;
    int n = 0;

    void expect(bool cond, const std::string& what) {
        ++n;
        if (!cond) {
            ok = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }
    void close(double got, double want, double tol, const std::string& what,
               bool relative = true) {
        const double err = std::abs(got - want);
        const double lim = relative ? tol * std::max(std::abs(want), 1e-300) : tol;
        std::ostringstream os;
        os << what << " got " << std::setprecision(8) << got << " want " << want;
        expect(err <= lim, os.str());
    }
};

CriterionResult make(int num, const std::string& name, Checker& c) {
    return {num, name, c.ok, c.ok ? std::to_string(c.n) + " checks" : c.detail.str()};
}

// ---- criteria -------------------------------------------------------------

CriterionResult c1_ar_totals() {
    Checker c;
    const double want = kPi / 4.0;
    const double t1 = total_volume(ModelId::ar_bell, MetricId::bures, 1.0, 3e-7).value;
    c.close(t1, want, 1e-6, "AR Bures total q=1");
    c.close(total_volume(ModelId::ar_bell, MetricId::bures, 0.5, 1e-5).value, want, 1e-3,
            "AR Bures total q=0.5");
    c.close(total_volume(ModelId::ar_bell, MetricId::bures, 2.0, 1e-5).value, want, 1e-3,
            "AR Bures total q=2");
    return make(1, "AR Bures total volume pi/4", c);
}

CriterionResult c2_ar_separable() {
    Checker c;
    const double want = kPi * (kRt2 - 1.0) / 4.0;
    c.close(separable_volume(ModelId::ar_bell, MetricId::bures, 1.0, 1e-6).value, want, 2e-3,
            "AR Bures separable q=1");
    c.close(separable_volume(ModelId::ar_bell, MetricId::bures, 0.5, 1e-5).value, want, 2e-3,
            "AR Bures separable q=0.5");
    return make(2, "AR Bures separable volume pi(sqrt2-1)/4", c);
}

CriterionResult c3_ar_probabilities() {
    Checker c;
    for (double q : {0.5, 1.0, 2.0}) {
        const auto sp = sep_probability(ModelId::ar_bell, MetricId::bures, q, 1e-5);
        c.close(sp.prob, kRt2 - 1.0, 1e-3, "AR Bures prob q=" + std::to_string(q));
    }
    for (double q : {0.5, 1.0}) {
        const auto sp = sep_probability(ModelId::ar_bell, MetricId::hs, q, 1e-6);
        c.close(sp.total.value, 1.0 / (4.0 * kRt2), 1e-3, "AR HS total q=" + std::to_string(q));
        c.close(sp.separable.value, 1.0 / (8.0 * kRt2), 1e-3,
                "AR HS separable q=" + std::to_string(q));
        c.close(sp.prob, 0.5, 1e-3, "AR HS prob q=" + std::to_string(q));
    }
    const auto wy = sep_probability(ModelId::ar_bell, MetricId::wigner_yanase, 1.0, 1e-5);
    const auto bu = sep_probability(ModelId::ar_bell, MetricId::bures, 1.0, 1e-5);
    c.close(wy.total.value, bu.total.value, 1e-3, "WY vs Bures total q=1");
    c.close(wy.separable.value, bu.separable.value, 1e-3, "WY vs Bures separable q=1");
    return make(3, "AR separability probabilities (silver mean, 1/2, WY)", c);
}

CriterionResult c4_trivariate_grid() {
    Checker c;
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    const double branch_pts[] = {-std::sqrt(3.0), -kRt2, -1.0, 0.0, golden, 1.0};
    std::vector<double> grid;
    for (int i = -30; i <= 30; ++i) {
        const double a = i / 10.0;
        bool near = false;
        for (double b : branch_pts) near = near || std::abs(a - b) < 0.02;
        if (!near) grid.push_back(a);
    }
    const auto rows = scan(ModelId::trivariate, MetricId::hs, grid, 2e-4);
    for (const auto& row : rows) {
        const double cf = closed_form_sepprob(CfModel::trivariate_alpha, row.param);
        const double tol = std::max(3.0 * row.result.prob_err, 1e-3);
        c.expect(std::isfinite(row.result.prob) && std::abs(row.result.prob - cf) <= tol,
                 "grid alpha=" + std::to_string(row.param));
    }
    // exact checks
    const auto at = [&](double a) {
        return sep_probability(ModelId::trivariate, MetricId::hs, a, 1e-5).prob;
    };
    c.close(at(2.0), 5.0 / 8.0, 1e-3, "alpha=2");
    for (double a : {1.0, 1.5, 4.0})
        c.close(at(a), 0.75 - 0.25 / a, 1e-3, "alpha=" + std::to_string(a));
    c.close(at(0.5), 37.0 / 64.0, 1e-3, "alpha=1/2 vs 37/64");
    // golden-ratio branch point: closed form continuous there, numeric matches
    const double cf_g = closed_form_sepprob(CfModel::trivariate_alpha, golden);
    c.close(cf_g, -0.125 * (std::sqrt(5.0) - 5.0) * golden * (golden + 1.0), 1e-12,
            "golden point value");
    c.close(at(golden), cf_g, 2e-3, "numeric at golden point");
    return make(4, "trivariate HS separability vs piecewise closed form", c);
}

CriterionResult c5_trivariate_bures() {
    Checker c;
    const auto sp = sep_probability(ModelId::trivariate, MetricId::bures, 2.0, 1e-6);
    c.close(sp.total.value, 0.35368, 2e-3, "total");
    c.close(sp.separable.value, 0.2000322, 2e-3, "separable");
    c.close(sp.prob, 0.566392, 2e-3, "probability");
    return make(5, "trivariate Bures volumes at alpha=2", c);
}

CriterionResult c6_bivariate() {
    Checker c;
    for (double a : {-2.5, -2.0, -1.6, -1.2, 0.45, 0.5, 0.8, 1.0, 2.0, 5.0}) {
        const auto sp = sep_probability(ModelId::bivariate, MetricId::hs, a, 1e-7);
        const double cf = closed_form_sepprob(CfModel::bivariate_alpha, a);
        c.close(sp.prob, cf, 2e-3, "prob alpha=" + std::to_string(a));
    }
    c.close(sep_probability(ModelId::bivariate, MetricId::hs, 1.0, 1e-8).prob, kRt2 - 1.0,
            1e-3, "silver mean at alpha=1");
    for (double a : {-0.5, 0.2}) {
        const double sep = separable_volume(ModelId::bivariate, MetricId::hs, a, 1e-8).value;
        c.expect(std::abs(sep) < 1e-6, "zero branch alpha=" + std::to_string(a));
    }
    {
        const auto sp = sep_probability(ModelId::bivariate, MetricId::hs, 50.0, 1e-8);
        c.close(sp.prob, closed_form_sepprob(CfModel::bivariate_alpha, 50.0), 1e-3,
                "alpha=50 near-limit");
        c.expect(std::abs(sp.prob - 0.5) < 3e-3, "alpha=50 approaches 1/2");
    }
    for (double a : {0.5, 1.0, 2.0})
        c.close(total_volume(ModelId::bivariate, MetricId::hs, a, 1e-8).value,
                bivariate_hs_total(a), 1e-3, "HS total alpha=" + std::to_string(a));
    return make(6, "bivariate HS separability vs closed form", c);
}

CriterionResult c7_jaynes_one_param() {
    Checker c;
    const double want_b = 2.0 * std::asin(kRt2 - 1.0) / kPi;
    const auto bu = sep_probability(ModelId::jaynes_one_param, MetricId::bures, 0, 1e-8);
    c.close(bu.prob, want_b, 1e-3, "Bures prob");
    const auto wy = sep_probability(ModelId::jaynes_one_param, MetricId::wigner_yanase, 0, 1e-8);
    c.close(wy.prob, want_b, 1e-3, "WY prob");
    const auto hs = sep_probability(ModelId::jaynes_one_param, MetricId::hs, 0, 1e-8);
    c.close(hs.prob, 0.343602, 1e-3, "HS prob");
    return make(7, "one-parameter Jaynes state separability", c);
}

CriterionResult c8_tlb() {
    Checker c;
    const auto bu = sep_probability(ModelId::tlb, MetricId::bures, 0, 2e-5);
    c.close(bu.total.value, kPi * kPi / 8.0, 1e-3, "Bures total");
    c.close(bu.separable.value, kPi * (4.0 - kPi) / 8.0, 1e-3, "Bures separable");
    c.close(bu.prob, (4.0 - kPi) / kPi, 1e-3, "Bures prob");
    const auto hs = sep_probability(ModelId::tlb, MetricId::hs, 0, 2e-6);
    c.close(hs.total.value, 1.0 / (6.0 * kRt2), 1e-3, "HS total");
    c.close(hs.separable.value, 1.0 / (12.0 * kRt2), 1e-3, "HS separable");
    c.close(hs.prob, 0.5, 1e-3, "HS prob");
    return make(8, "TLB volumes and separability", c);
}

CriterionResult c9_nullity() {
    Checker c;
    c.expect(nullity_check(escort_qubit(), "bures", 30), "4D extended Bures not null");
    c.expect(nullity_check(qutrit_v_q(), "bures", 30), "5D qutrit extension not null");
    c.expect(nullity_check(ar_bell(), "bures", 30), "3-param AR tensor not null");
    c.expect(nullity_check(tlb_escort(), "bures", 30), "4-param TLB escort not null");
    c.expect(!nullity_check(bloch_qubit(), "bures", 30), "Bloch Bures wrongly null");
    return make(9, "null volume elements of the q-extensions", c);
}

CriterionResult c10_kl_matrix() {
    Checker c;
    const auto pB = prior(PriorId::p_B);
    const auto pBt = prior(PriorId::p_Bq1trunc);
    const auto pF = prior(PriorId::p_F);
    const auto pFq1 = prior(PriorId::p_Fq1);
    const auto rec = canonical_record();

    auto post = [&](const PriorDensity& p, double pow) { return posterior(p, rec, pow); };

    c.close(kl(pB, pBt), 0.101846, 1e-4, "KL(pB,pBt)", false);
    c.close(kl(pBt, pB), 0.0661775, 1e-4, "KL(pBt,pB)", false);
    c.close(kl(post(pB, 1.0), pBt), 0.169782, 1e-4, "KL(postB,pBt)", false);
    c.close(kl(post(pBt, 1.0), pB), 0.197657, 1e-4, "KL(postBt,pB)", false);
    c.close(kl(post(pB, 0.5), pBt), 0.093849, 1e-4, "KL(postB^.5,pBt)", false);
    c.close(kl(post(pBt, 0.5), pB), 0.114669, 1e-4, "KL(postBt^.5,pB)", false);
    c.close(kl(pF, pFq1), 0.229666, 1e-4, "KL(pF,pFq1)", false);
    c.close(kl(pFq1, pF), 0.170145, 1e-4, "KL(pFq1,pF)", false);
    c.close(kl(post(pF, 1.0), pFq1), 0.70766, 1e-4, "KL(postF,pFq1)", false);
    c.close(kl(post(pFq1, 1.0), pF), 0.0641738, 1e-4, "KL(postFq1,pF)", false);
    c.close(kl(pB, pFq1), 0.148269, 1e-4, "KL(pB,pFq1)", false);
    c.close(kl(pFq1, pB), 0.0989669, 1e-4, "KL(pFq1,pB)", false);
    c.close(kl(post(pB, 0.5), pFq1), 0.283218, 1e-4, "KL(postB^.5,pFq1)", false);
    c.close(kl(post(pFq1, 0.5), pB), 0.0842879, 1e-4, "KL(postFq1^.5,pB)", false);
    c.close(kl(pBt, pFq1), 0.105463, 1e-4, "KL(pBt,pFq1)", false);
    c.close(kl(pFq1, pBt), 0.0914175, 1e-4, "KL(pFq1,pBt)", false);
    c.close(kl(post(pBt, 0.5), pFq1), 0.245602, 1e-4, "KL(postBt^.5,pFq1)", false);
    c.close(kl(post(pFq1, 0.5), pBt), 0.0408236, 1e-4, "KL(postFq1^.5,pBt)", false);
    c.close(kl(pBt, pF), 0.0191948, 1e-4, "KL(pBt,pF)", false);
    c.close(kl(pF, pBt), 0.0234599, 1e-4, "KL(pF,pBt)", false);
    c.close(kl(post(pBt, 0.5), pF), 0.0143147, 1e-4, "KL(postBt^.5,pF)", false);
    c.close(kl(post(pF, 0.5), pBt), 0.1047772, 1e-4, "KL(postF^.5,pBt)", false);

    // Clarke verdicts produce the total order pFq1 > pB > pBt > pF
    const PriorDensity* ps[4] = {&pFq1, &pB, &pBt, &pF};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const auto v = clarke_compare(*ps[i], *ps[j], rec);
            c.expect(v.more_noninformative == ps[i]->id,
                     "verdict " + ps[i]->id + " vs " + ps[j]->id + " -> " +
                         v.more_noninformative);
        }
    return make(10, "prior/KL matrix and Clarke ordering", c);
}

CriterionResult c11_normalizations() {
    Checker c;
    c.close(husimi_norm3(), 1.39350989, 1e-4, "3D Fisher-Husimi normalization", false);
    c.close(husimi_norm4_q1(), 0.24559293, 1e-4, "4D extended normalization", false);
    return make(11, "normalization constants", c);
}

CriterionResult c12_marginals() {
    Checker c;
    for (double q : {0.5, 1.0, 5.0}) {
        auto num = integrate_tanh_sinh(
            [&](double u) {
                return bures_trunc_element_omr(u * u, q) * 2.0 * u;
            },
            0.0, 1.0, 1e-12);
        c.close(4.0 * kPi * num.value, bures_trunc_ball_integral(q), 1e-6,
                "truncated-Bures ball integral q=" + std::to_string(q));
    }
    const auto [qpk, hpk] = marginal_q_peak();
    c.close(qpk, 3.59782, 0.05, "Husimi q-marginal peak location", false);
    c.close(hpk, 0.448488, 0.01, "Husimi q-marginal peak height", false);
    return make(12, "closed-form and Husimi marginals", c);
}

CriterionResult c13_information_gains() {
    Checker c;
    const auto pB = prior(PriorId::p_B);
    MeasurementRecord pair_z;  // one up + one down along z
    pair_z.up = {0, 0, 1};
    pair_z.down = {0, 0, 1};
    MeasurementRecord same_z;  // two ups along z
    same_z.up = {0, 0, 2};
    MeasurementRecord single_z;
    single_z.up = {0, 0, 1};

    c.close(information_gain(pB, pair_z), 7.0 / 6.0 - std::log(3.0), 1e-6, "pair gain", false);
    c.close(information_gain(pB, same_z), 59.0 / 30.0 - std::log(5.0), 1e-6,
            "two-same gain", false);
    c.close(information_gain(pB, single_z), 0.140186, 1e-4, "single gain", false);

    const auto qpr = q_truncated_prior();
    c.close(q_extended_gain(qpr, pair_z), 0.0597923, 1e-3, "extended pair gain", false);
    c.close(q_extended_gain(qpr, single_z), 0.134651, 1e-3, "extended single gain", false);
    c.close(q_extended_gain(qpr, same_z), 0.349601, 1e-3, "extended two-same gain", false);
    return make(13, "information gains", c);
}

CriterionResult c14_biasedness() {
    Checker c;
    const int n = 50;
    const PriorId order[4] = {PriorId::p_Fq1, PriorId::p_B, PriorId::p_Bq1trunc, PriorId::p_F};
    std::vector<std::vector<CurvePoint>> curves;
    for (auto id : order) curves.push_back(biasedness_curve(id, 0.995, 0.9999, n));
    int bad = 0;
    double first_bad = 0.0;
    for (int i = 0; i < n; ++i) {
        bool ok = curves[0][i].value > curves[1][i].value &&
                  curves[1][i].value > curves[2][i].value &&
                  curves[2][i].value > curves[3][i].value;
        if (!ok && bad++ == 0) first_bad = curves[0][i].r;
    }
    std::ostringstream os;
    os << bad << "/" << n << " points violate the ordering";
    if (bad > 0) os << " (first at r=" << std::setprecision(6) << first_bad
                    << "; p_B overtakes p_Fq1 near r~0.9956)";
    c.expect(bad == 0, os.str());
    return make(14, "biasedness ordering on [0.995, 0.9999]", c);
}

CriterionResult c15_properties() {
    Checker c;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // Hubner vs monotone(f=bures) and commuting reduction on several charts
    auto sample_pt = [&](const FamilyChart& ch) {
        ParamPoint p(ch.dim());
        for (int trial = 0; trial < 1000; ++trial) {
            for (int i = 0; i < ch.dim(); ++i) {
                auto [lo, hi] = ch.bounding_box[i];
                if (ch.param_names[i] == "q") hi = std::min(hi, 3.0);
                p[i] = lo + (0.08 + 0.84 * uni(rng)) * (hi - lo);
            }
            if (ch.feasible(p)) {
                bool interior = true;
                for (int i = 0; i < ch.dim() && interior; ++i) {
                    ParamPoint q = p;
                    const double e = 1e-3;
                    q[i] = p[i] + e; interior = ch.feasible(q);
                    q[i] = p[i] - e; interior = interior && ch.feasible(q);
                }
                if (interior) return p;
            }
        }
        throw Error("no interior sample found");
    };

    const std::vector<FamilyChart> charts = {bloch_qubit(), escort_qubit(), ar_bell_at(1.0),
                                             jaynes_alpha(2.0), tlb(), qutrit_v()};
    double worst_id = 0.0;
    for (const auto& ch : charts) {
        for (int k = 0; k < 17; ++k) {
            const ParamPoint p = sample_pt(ch);
            const auto gb = bures_tensor(ch, p);
            const auto gm = monotone_tensor(ch, p, f_bures());
            const double scale = gb.g.cwiseAbs().maxCoeff();
            worst_id = std::max(worst_id,
                                (gb.g - gm.g).cwiseAbs().maxCoeff() / std::max(scale, 1e-300));
        }
    }
    c.expect(worst_id < 1e-8, "Hubner vs monotone(bures) deviates " + std::to_string(worst_id));

    // commuting-family reduction: (1/4) classical Fisher on Bell-diagonal charts
    {
        const auto ch = ar_bell_at(1.0);
        double worst = 0.0;
        for (int k = 0; k < 25; ++k) {
            const ParamPoint p = sample_pt(ch);
            Eigen::Vector4d w = ar_weights(p[0], p[1], 1.0), db, ds;
            ar_weight_derivs(p[0], p[1], 1.0, db, ds);
            RMat fisher(2, 2);
            fisher(0, 0) = (db.array() * db.array() / w.array()).sum();
            fisher(0, 1) = fisher(1, 0) = (db.array() * ds.array() / w.array()).sum();
            fisher(1, 1) = (ds.array() * ds.array() / w.array()).sum();
            for (const auto& f : {f_bures(), f_wigner_yanase()}) {
                const auto g = monotone_tensor(ch, p, f);
                worst = std::max(worst, (g.g - 0.25 * fisher).cwiseAbs().maxCoeff() /
                                            fisher.cwiseAbs().maxCoeff());
            }
        }
        c.expect(worst < 1e-8, "commuting reduction deviates " + std::to_string(worst));
    }

    // tangential-form identities: th1-th1 entries against ((1+r) f(W))^-1
    {
        const auto bloch = bloch_qubit();
        const auto esc = escort_qubit();
        double worst = 0.0;
        for (double r : {0.2, 0.5, 0.8}) {
            const double W = (1.0 - r) / (1.0 + r);
            const auto gb = bures_tensor(bloch, {r, 1.1, 2.3});
            const double tb = 0.25 * r * r / ((1.0 + r) * f_bures()(W));  // = r^2/4
            worst = std::max(worst, std::abs(gb.g(1, 1) - tb) / tb);
            for (double q : {0.7, 1.3, 2.5}) {
                const auto ge = bures_tensor(esc, {r, 1.1, 2.3, q});
                const double tq = 1.0 / ((1.0 + r) * f_bures_q(q)(W));
                worst = std::max(worst, std::abs(ge.g(1, 1) - tq) / tq);
            }
            const auto hf = husimi_fisher_components(r, 1.0);
            const double tf = r * r / ((1.0 + r) * f_fisher_husimi()(W));
            worst = std::max(worst, std::abs(hf.tang - tf) / tf);
            for (double q : {0.6, 2.0, 5.0}) {
                const auto hq = husimi_fisher_components(r, q);
                const double tq = r * r / ((1.0 + r) * f_fisher_husimi_q(q)(W));
                worst = std::max(worst, std::abs(hq.tang - tq) / tq);
            }
        }
        c.expect(worst < 1e-7, "tangential identities deviate " + std::to_string(worst));
    }

    // reparameterization: state equality at 1e-10
    {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double s = 0.5 + 7.0 * uni(rng);
            const double b = uni(rng) * s / kC * 0.98;
            const auto [b1, s1] = reparameterize_ar(b, s);
            const CMat lhs = bell_diagonal(ar_weights(b, s, 0.5));
            const CMat rhs = bell_diagonal(ar_weights(b1, s1, 1.0));
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
        c.expect(worst < 1e-10, "reparameterized states deviate " + std::to_string(worst));
    }

    // MC determinism under a fixed seed
    {
        McOptions opt;
        opt.seed = 42;
        opt.n_samples = 200000;
        auto f = [](const std::vector<double>& x) { return x[0] * x[0] + x[1]; };
        const std::vector<std::pair<double, double>> box{{0, 1}, {0, 1}};
        const auto r1 = integrate_mc(f, box, opt);
        const auto r2 = integrate_mc(f, box, opt);
        c.expect(r1.value == r2.value && r1.abs_error == r2.abs_error,
                 "MC results differ under fixed seed");
    }
    return make(15, "property suites", c);
}

}  // namespace

int run_acceptance(std::ostream& os, const std::vector<int>& only) {
    using Runner = std::function<CriterionResult()>;
    const std::vector<Runner> runners = {
        c1_ar_totals,      c2_ar_separable, c3_ar_probabilities, c4_trivariate_grid,
        c5_trivariate_bures, c6_bivariate,  c7_jaynes_one_param, c8_tlb,
        c9_nullity,        c10_kl_matrix,   c11_normalizations,  c12_marginals,
        c13_information_gains, c14_biasedness, c15_properties};
    int failures = 0;
    for (size_t i = 0; i < runners.size(); ++i) {
        const int num = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), num) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = runners[i]();
        } catch (const std::exception& e) {
            r = {num, "criterion " + std::to_string(num), false,
                 std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        os << (r.pass ? "PASS" : "FAIL") << "  C" << std::setw(2) << std::left << r.number
           << " " << r.name << " [" << std::fixed << std::setprecision(1) << secs << "s] ("
           << r.detail << ")\n"
           << std::defaultfloat;
        os.flush();
        if (!r.pass) ++failures;
    }
    return failures;
}

}  // namespace qig
