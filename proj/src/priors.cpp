#include "qig/priors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <mutex>

#include "qig/husimi.hpp"
#include "qig/metric.hpp"

namespace qig {

namespace {

constexpr double kPi = 3.14159265358979323846;

double W_of(double r) { return (1.0 - r) / (1.0 + r); }

// escort Bloch radius ratio R_q(r)/r
double escort_scale(double r, double q) {
    if (r < 1e-12) return q;  // limit of R_q/r at r -> 0
    const double Wq = std::exp(q * (std::log1p(-r) - std::log1p(r)));
    return (1.0 - Wq) / ((1.0 + Wq) * r);
}

// angular product rule: c1 = cos th1 Gauss-Legendre x th2 midpoint
struct AngularRule {
    std::vector<std::array<double, 3>> node;  // th1, th2, weight (sums to 4 pi)
};

const AngularRule& angular_rule(int nc) {
    static std::mutex mu;
    static std::map<int, AngularRule> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(nc);
    if (it != cache.end()) return it->second;
    AngularRule rule;
    const auto& gl = gauss_legendre(nc);
    const int nt = 2 * nc;
    rule.node.reserve(gl.size() * nt);
    for (const auto& [c, wc] : gl) {
        const double th1 = std::acos(c);
        for (int k = 0; k < nt; ++k) {
            const double th2 = 2.0 * kPi * (k + 0.5) / nt;
            rule.node.push_back({th1, th2, wc * 2.0 * kPi / nt});
        }
    }
    return cache.emplace(nc, std::move(rule)).first->second;
}

// int over the ball of f(r, th1, th2) against dr dth1 dth2 (f carries the
// sin th1 factor itself); r = 1 - u^2 edge substitution, adaptive in u
double ball3(const std::function<double(double, double, double)>& f, int nc,
             double tol) {
    const auto& rule = angular_rule(nc);
    auto radial = [&](double u) {
        double r = 1.0 - u * u;
        r = std::min(std::max(r, 1e-13), 1.0 - 1e-13);
        double acc = 0.0;
        for (const auto& nd : rule.node) {
            const double v = f(r, nd[0], nd[1]);
            // the rule weight contains sin th1 via the cos-substitution;
            // divide it back out since f carries its own sin factor
            acc += nd[2] * v / std::max(std::sin(nd[0]), 1e-300);
        }
        return acc * 2.0 * u;
    };
    return integrate_adaptive(radial, 1e-9, 1.0, tol, tol * 0.1, 800).value;
}

double ball3_refined(const std::function<double(double, double, double)>& f,
                     double tol) {
    double prev = ball3(f, 48, tol);
    for (int nc : {72, 108}) {
        const double cur = ball3(f, nc, tol);
        if (std::abs(cur - prev) <= std::max(tol, 1e-7 * std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

PriorId prior_from_string(const std::string& s) {
    if (s == "p_B" || s == "pB") return PriorId::p_B;
    if (s == "p_Bq1trunc" || s == "pBt") return PriorId::p_Bq1trunc;
    if (s == "p_F" || s == "pF") return PriorId::p_F;
    if (s == "p_Fq1" || s == "pFq1") return PriorId::p_Fq1;
    if (s == "uniform" || s == "uniform_ball") return PriorId::uniform_ball;
    throw DomainError("unknown prior: " + s);
}

std::string to_string(PriorId id) {
    switch (id) {
        case PriorId::p_B: return "p_B";
        case PriorId::p_Bq1trunc: return "p_Bq1trunc";
        case PriorId::p_F: return "p_F";
        case PriorId::p_Fq1: return "p_Fq1";
        case PriorId::uniform_ball: return "uniform_ball";
    }
    return "?";
}

double prior_eval(PriorId id, double r, double th1, double th2) {
    (void)th2;
    if (r < 0.0 || r >= 1.0)
        throw DomainError("prior density diverges at r=1; evaluate interior points");
    if (r == 0.0) return 0.0;  // common limit of all five densities
    const double st = std::sin(th1);
    switch (id) {
        case PriorId::p_B:
            return r * r * st / (kPi * kPi * std::sqrt(1.0 - r * r));
        case PriorId::p_Bq1trunc: {
            const double l = -std::log(W_of(r));
            return 0.75 * r * r * st * l / (kPi * (1.0 + std::log(4.0)));
        }
        case PriorId::p_F:
            return husimi_elem3(r) * st / husimi_norm3();
        case PriorId::p_Fq1:
            return husimi_elem4_q1(r) * st / husimi_norm4_q1();
        case PriorId::uniform_ball:
            return 3.0 * r * r * st / (4.0 * kPi);
    }
    throw DomainError("unknown prior id");
}

PriorDensity prior(PriorId id) {
    PriorDensity p;
    p.id = to_string(id);
    switch (id) {
        case PriorId::p_B: p.normalization = kPi * kPi / 8.0; break;  // of the /8 element
        case PriorId::p_Bq1trunc: p.normalization = kPi * (1.0 + std::log(4.0)) / 24.0; break;
        case PriorId::p_F: p.normalization = husimi_norm3(); break;
        case PriorId::p_Fq1: p.normalization = husimi_norm4_q1(); break;
        case PriorId::uniform_ball: p.normalization = 4.0 * kPi / 3.0; break;
    }
    p.density = [id](double r, double t1, double t2) { return prior_eval(id, r, t1, t2); };
    return p;
}

MeasurementRecord canonical_record() {
    MeasurementRecord rec;
    rec.up = {1, 1, 1};
    rec.down = {1, 1, 1};
    return rec;
}

double likelihood(const MeasurementRecord& rec, double x, double y, double z,
                  double q) {
    double scale = 1.0;
    if (rec.q_extended) {
        const double r = std::sqrt(x * x + y * y + z * z);
        scale = escort_scale(r, q);
    }
    const double comp[3] = {x * scale, y * scale, z * scale};
    double L = 1.0;
    for (int i = 0; i < 3; ++i) {
        const double pu = 0.5 * (1.0 + comp[i]), pd = 0.5 * (1.0 - comp[i]);
        for (int k = 0; k < rec.up[i]; ++k) L *= pu;
        for (int k = 0; k < rec.down[i]; ++k) L *= pd;
    }
    return L;
}

namespace {

void sph_to_cart(double r, double t1, double t2, double& x, double& y, double& z) {
    x = r * std::cos(t1);
    y = r * std::sin(t1) * std::cos(t2);
    z = r * std::sin(t1) * std::sin(t2);
}

double likelihood_sph(const MeasurementRecord& rec, double r, double t1, double t2) {
    double x, y, z;
    sph_to_cart(r, t1, t2, x, y, z);
    return likelihood(rec, x, y, z);
}

}  // namespace

PriorDensity posterior(const PriorDensity& pr, const MeasurementRecord& rec,
                       double power) {
    const double Z = ball3_refined(
        [&](double r, double t1, double t2) {
            return pr.density(r, t1, t2) * std::pow(likelihood_sph(rec, r, t1, t2), power);
        },
        1e-9);
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw NormalizationFailure("posterior normalization failed");
    PriorDensity out;
    out.id = pr.id + "_post";
    out.normalization = Z;
    auto base = pr.density;
    out.density = [base, rec, power, Z](double r, double t1, double t2) {
        return base(r, t1, t2) * std::pow(likelihood_sph(rec, r, t1, t2), power) / Z;
    };
    return out;
}

double kl(const PriorDensity& p, const PriorDensity& q) {
    const double val = ball3_refined(
        [&](double r, double t1, double t2) {
            const double a = p.density(r, t1, t2);
            if (a <= 0.0) return 0.0;
            const double b = q.density(r, t1, t2);
            if (b <= 0.0)
                throw SupportMismatch("kl: second argument vanishes on the support of the first");
            return a * std::log(a / b);
        },
        1e-8);
    return val;
}

Verdict clarke_compare(const PriorDensity& a, const PriorDensity& b,
                       const MeasurementRecord& rec) {
    Verdict v{};
    v.kl_ab = kl(a, b);
    v.kl_ba = kl(b, a);
    const PriorDensity post_a = posterior(a, rec, 0.5);
    const PriorDensity post_b = posterior(b, rec, 0.5);
    v.kl_post_ab = kl(post_a, b);
    v.kl_post_ba = kl(post_b, a);
    const double tie = 1e-5;
    const bool a_closer = v.kl_post_ab < v.kl_ab - tie;
    const bool b_away = v.kl_post_ba > v.kl_ba + tie;
    const bool b_closer = v.kl_post_ba < v.kl_ba - tie;
    const bool a_away = v.kl_post_ab > v.kl_ab + tie;
    if (a_closer && b_away)
        v.more_noninformative = a.id;
    else if (b_closer && a_away)
        v.more_noninformative = b.id;
    else
        v.more_noninformative = "undecided";
    return v;
}

std::vector<CurvePoint> biasedness_curve(PriorId id, double r_lo, double r_hi, int n) {
    if (!(r_lo > 0.0 && r_hi <= 1.0 && r_lo < r_hi))
        throw DomainError("biasedness range must lie in (0, 1]");
    const auto& rule = angular_rule(64);
    std::vector<CurvePoint> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double r = std::min(r_lo + (r_hi - r_lo) * i / (n - 1.0), 1.0 - 1e-12);
        double m = 0.0;
        for (const auto& nd : rule.node)
            m += nd[2] * prior_eval(id, r, nd[0], nd[1]) / std::max(std::sin(nd[0]), 1e-300);
        out.push_back({r, m});
    }
    return out;
}

double information_gain(const PriorDensity& pr, const MeasurementRecord& rec) {
    // gain = E_post[log L] - log Z with Z = int prior L
    const double Z = ball3_refined(
        [&](double r, double t1, double t2) {
            return pr.density(r, t1, t2) * likelihood_sph(rec, r, t1, t2);
        },
        1e-10);
    const double EL = ball3_refined(
        [&](double r, double t1, double t2) {
            const double L = likelihood_sph(rec, r, t1, t2);
            return L > 0.0 ? pr.density(r, t1, t2) * L * std::log(L) : 0.0;
        },
        1e-10);
    return EL / Z - std::log(Z);
}

QTruncatedPrior q_truncated_prior(double q_lo, double q_hi) {
    if (!std::isfinite(q_hi)) throw DivergenceError("q-extended prior diverges for q_hi = inf");
    if (!(q_lo > 0.0 && q_hi > q_lo)) throw DomainError("bad q range");
    QTruncatedPrior pr;
    pr.q_lo = q_lo;
    pr.q_hi = q_hi;
    pr.normalization = kPi * (1.0 + std::log(4.0)) / 24.0 * std::log(q_hi / q_lo);
    const double Z = pr.normalization;
    pr.density = [Z](double r, double t1, double t2, double q) {
        (void)t2;
        return bures_trunc_element(r, q) * std::sin(t1) / Z;
    };
    return pr;
}

namespace {

// composite (v = log q) x r x angular rule for the q-extended integrals
std::pair<double, double> q_gain_pass(const QTruncatedPrior& pr,
                                      const MeasurementRecord& qrec,
                                      int nv, int nr, int nc) {
    const auto& rule = angular_rule(nc);
    const auto& glv = gauss_legendre(nv);
    const auto& glr = gauss_legendre(nr);
    const double lv0 = std::log(pr.q_lo), lv1 = std::log(pr.q_hi);
    double Zacc = 0.0, Eacc = 0.0;
    for (const auto& [xv, wv] : glv) {
        const double v = 0.5 * (lv0 + lv1) + 0.5 * (lv1 - lv0) * xv;
        const double q = std::exp(v);
        const double wq = wv * 0.5 * (lv1 - lv0) * q;  // dq = q dv
        // radial pieces: [0, split] plain, [split, 1] with r = 1 - u^2
        const double split = std::min(0.5, 2.0 / q);
        auto accumulate = [&](double r, double wr) {
            const double el = bures_trunc_element(r, q);
            if (el <= 0.0) return;
            double zl = 0.0, zll = 0.0;
            for (const auto& nd : rule.node) {
                double x, y, z;
                sph_to_cart(r, nd[0], nd[1], x, y, z);
                const double L = likelihood(qrec, x, y, z, q);
                zl += nd[2] * L;
                if (L > 0.0) zll += nd[2] * L * std::log(L);
            }
            Zacc += wq * wr * el * zl;
            Eacc += wq * wr * el * zll;
        };
        for (const auto& [xr, wr] : glr) {
            const double r = 0.5 * split * (1.0 + xr);
            accumulate(r, wr * 0.5 * split);
        }
        const double umax = std::sqrt(1.0 - split);
        for (const auto& [xu, wu] : glr) {
            const double u = 0.5 * umax * (1.0 + xu);
            const double r = 1.0 - u * u;
            accumulate(r, wu * 0.5 * umax * 2.0 * u);
        }
    }
    // prior normalizer carries the 4 pi angular mass
    const double Z4 = pr.normalization;
    return {Zacc / Z4, Eacc / Z4};
}

}  // namespace

double q_extended_gain(const QTruncatedPrior& pr, const MeasurementRecord& rec,
                       double tol) {
    MeasurementRecord qrec = rec;
    qrec.q_extended = true;
    auto [Z1, E1] = q_gain_pass(pr, qrec, 64, 48, 40);
    auto [Z2, E2] = q_gain_pass(pr, qrec, 96, 72, 56);
    const double g1 = E1 / Z1 - std::log(Z1);
    const double g2 = E2 / Z2 - std::log(Z2);
    if (std::abs(g2 - g1) > std::max(5e-4, tol * 1e5)) {
        std::ostringstream os;
        os << "q-extended gain did not stabilize under refinement: " << g1 << " vs " << g2;
        throw QuadratureFailure(os.str());
    }
    return g2;
}

}  // namespace qig
