#include "qig/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <random>
#include <thread>

namespace qig {

namespace {

// Kronrod 15 / Gauss 7 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Seg {
    double a, b, val, err;
    bool operator<(const Seg& o) const { return err < o.err; }
};

Seg gk15(const Fn1& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double k = kWgk[7] * fc, g = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double y = f(c - x) + f(c + x);
        k += kWgk[j] * y;
        if (j % 2 == 1) g += kWg[j / 2] * y;
    }
    const double val = k * h;
    double err = std::abs((k - g) * h);
    err = std::min(err, 200.0 * err * std::sqrt(std::max(err, 0.0)));
    if (err == 0.0) err = std::abs(val) * 1e-15;
    return {a, b, val, err};
}

}  // namespace

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<double, double>> nw(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            p0 = 1.0; p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            const double dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        p1 = 0.0; p0 = 1.0;
        for (int j = 0; j < n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        const double dp = n * (x * p0 - p1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nw[i] = {-x, w};
        nw[n - 1 - i] = {x, w};
    }
    return cache.emplace(n, std::move(nw)).first->second;
}

QuadratureResult integrate_adaptive(const Fn1& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals) {
    QuadratureResult out;
    out.method = "cubature";
    if (a == b) return out;
    std::priority_queue<Seg> heap;
    Seg s0 = gk15(f, a, b);
    out.n_evals = 15;
    double total = s0.val, toterr = s0.err;
    heap.push(s0);
    const double min_width = std::abs(b - a) * 1e-15;
    while (static_cast<int>(heap.size()) < max_intervals) {
        if (toterr <= abs_tol || toterr <= rel_tol * std::abs(total)) break;
        Seg top = heap.top();
        if (top.b - top.a <= min_width) break;
        heap.pop();
        const double mid = 0.5 * (top.a + top.b);
        Seg l = gk15(f, top.a, mid), r = gk15(f, mid, top.b);
        out.n_evals += 30;
        total += l.val + r.val - top.val;
        toterr += l.err + r.err - top.err;
        heap.push(l);
        heap.push(r);
    }
    out.value = total;
    out.abs_error = std::max(toterr, 0.0);
    return out;
}

QuadratureResult integrate_tanh_sinh(const Fn1& f, double a, double b,
                                     double tol, int max_level) {
    QuadratureResult out;
    out.method = "cubature";
    if (a == b) return out;
    const double c = 0.5 * (a + b), h0 = 0.5 * (b - a);
    // x = c + h0 * tanh(pi/2 sinh(t)); weights pi/2 cosh(t)/cosh^2(pi/2 sinh t)
    auto eval = [&](double t, double& x, double& w) {
        const double sh = std::sinh(t);
        const double u = 0.5 * M_PI * sh;
        const double th = std::tanh(u);
        x = c + h0 * th;
        const double ch = std::cosh(u);
        w = 0.5 * M_PI * std::cosh(t) / (ch * ch);
        return x > a && x < b;
    };
    const double tmax = 6.5;
    double x, w;
    auto sample = [&](double t) {
        if (!eval(t, x, w)) return 0.0;
        const double fx = f(x);
        ++out.n_evals;
        return std::isfinite(fx) ? fx * w : 0.0;
    };
    double h = 1.0;
    double sum = sample(0.0);
    for (int k = 1; k <= static_cast<int>(tmax); ++k) sum += sample(k) + sample(-k);
    double prev = sum * h * h0;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        const int nmax = static_cast<int>(tmax / h);
        for (int k = 1; k <= nmax; k += 2)  // odd multiples are the new nodes
            sum += sample(k * h) + sample(-k * h);
        const double value = sum * h * h0;
        const double err = std::abs(value - prev);
        if (level >= 3 && (err <= tol * std::max(1.0, std::abs(value)))) {
            out.value = value;
            out.abs_error = err;
            return out;
        }
        prev = value;
    }
    out.value = prev;
    out.abs_error = std::abs(prev) * 1e-8 + 1e-14;
    return out;
}

QuadratureResult integrate_indicator(const Fn1& f, const std::function<bool(double)>& inside,
                                     double a, double b, double tol, int scan_n) {
    // locate predicate flips on a uniform scan, refine each by bisection
    std::vector<double> cuts{a};
    bool prev = inside(a + (b - a) * 1e-12);
    double xprev = a;
    for (int i = 1; i <= scan_n; ++i) {
        const double x = a + (b - a) * i / scan_n;
        const bool cur = inside(std::min(x, b - (b - a) * 1e-12));
        if (cur != prev) {
            double lo = xprev, hi = x;
            for (int k = 0; k < 80 && hi - lo > (b - a) * 1e-14; ++k) {
                const double mid = 0.5 * (lo + hi);
                (inside(mid) == prev ? lo : hi) = mid;
            }
            cuts.push_back(0.5 * (lo + hi));
            prev = cur;
        }
        xprev = x;
    }
    cuts.push_back(b);
    QuadratureResult out;
    out.method = "cubature";
    bool in = inside(a + (b - a) * 1e-12);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (in && cuts[i + 1] > cuts[i]) {
            const double pad = (cuts[i + 1] - cuts[i]) * 1e-14;
            auto r = integrate_tanh_sinh(f, cuts[i] + pad, cuts[i + 1] - pad, tol);
            out.value += r.value;
            out.abs_error += r.abs_error;
            out.n_evals += r.n_evals;
        }
        in = !in;
    }
    return out;
}

// ---- Monte Carlo -----------------------------------------------------------

namespace {
std::atomic<int> g_threads{0};
}

int default_threads() {
    int t = g_threads.load();
    if (t > 0) return t;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_default_threads(int n) { g_threads.store(n); }

void parallel_for_blocks(std::int64_t n_items, int n_threads,
                         const std::function<void(std::int64_t, std::int64_t, int)>& work) {
    if (n_threads <= 1 || n_items < 2) {
        work(0, n_items, 0);
        return;
    }
    const std::int64_t chunk = (n_items + n_threads - 1) / n_threads;
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) {
        const std::int64_t lo = t * chunk, hi = std::min<std::int64_t>(n_items, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([=, &work] { work(lo, hi, t); });
    }
    for (auto& th : pool) th.join();
}

QuadratureResult integrate_mc(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<std::pair<double, double>>& box,
                              const McOptions& opt) {
    const int dim = static_cast<int>(box.size());
    double vol = 1.0;
    for (auto& [lo, hi] : box) vol *= (hi - lo);

    // fixed block decomposition: strata blocks indexed independently of threads
    std::int64_t n_strata = 1;
    for (int d = 0; d < dim; ++d) n_strata *= opt.strata_per_dim;
    const std::int64_t per_stratum =
        std::max<std::int64_t>(2, opt.n_samples / std::max<std::int64_t>(1, n_strata));

    std::vector<double> sums(n_strata, 0.0), sqs(n_strata, 0.0);
    std::int64_t n_eff = per_stratum * n_strata;

    parallel_for_blocks(n_strata, default_threads(),
        [&](std::int64_t lo, std::int64_t hi, int) {
            std::vector<double> x(dim);
            for (std::int64_t s = lo; s < hi; ++s) {
                std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL * s + 1);
                std::uniform_real_distribution<double> uni(0.0, 1.0);
                std::vector<int> idx(dim);
                std::int64_t rem = s;
                for (int d = 0; d < dim; ++d) {
                    idx[d] = static_cast<int>(rem % opt.strata_per_dim);
                    rem /= opt.strata_per_dim;
                }
                double acc = 0.0, acc2 = 0.0;
                const std::int64_t pairs = opt.antithetic ? per_stratum / 2 : per_stratum;
                for (std::int64_t i = 0; i < pairs; ++i) {
                    std::vector<double> u(dim);
                    for (int d = 0; d < dim; ++d) u[d] = uni(rng);
                    for (int rep = 0; rep < (opt.antithetic ? 2 : 1); ++rep) {
                        for (int d = 0; d < dim; ++d) {
                            const double uu = rep == 0 ? u[d] : 1.0 - u[d];
                            const double frac = (idx[d] + uu) / opt.strata_per_dim;
                            x[d] = box[d].first + frac * (box[d].second - box[d].first);
                        }
                        const double v = f(x);
                        acc += v;
                        acc2 += v * v;
                    }
                }
                sums[s] = acc;
                sqs[s] = acc2;
            }
        });

    double mean = 0.0, var = 0.0;
    for (std::int64_t s = 0; s < n_strata; ++s) mean += sums[s];
    mean /= static_cast<double>(n_eff);
    for (std::int64_t s = 0; s < n_strata; ++s) var += sqs[s];
    var = var / static_cast<double>(n_eff) - mean * mean;
    var = std::max(var, 0.0);

    QuadratureResult out;
    out.method = "monte_carlo";
    out.value = mean * vol;
    out.abs_error = 3.0 * vol * std::sqrt(var / static_cast<double>(n_eff));
    out.n_evals = n_eff;
    return out;
}

}  // namespace qig
