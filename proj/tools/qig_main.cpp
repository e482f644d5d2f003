// Command-line front end: metric tensors, separability volumes and scans,
// prior comparisons, Husimi curves, and the acceptance self-test.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "qig/charts.hpp"
#include "qig/husimi.hpp"
#include "qig/metric.hpp"
#include "qig/priors.hpp"
#include "qig/regions.hpp"
#include "qig/report.hpp"
#include "qig/selftest.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitSupport = 4;

qig::FamilyChart chart_by_name(const std::string& name, double q, double alpha) {
    if (name == "bloch" || name == "bloch_qubit") return qig::bloch_qubit();
    if (name == "escort_qubit") return qig::escort_qubit();
    if (name == "qutrit_v") return qig::qutrit_v();
    if (name == "qutrit_v_q") return qig::qutrit_v_q();
    if (name == "ar_bell") return qig::ar_bell();
    if (name == "ar_bell_q") return qig::ar_bell_at(q);
    if (name == "jaynes_alpha") return qig::jaynes_alpha(alpha);
    if (name == "jaynes_alpha_bivariate") return qig::jaynes_alpha_bivariate(alpha);
    if (name == "tlb") return qig::tlb();
    if (name == "tlb_escort") return qig::tlb_escort();
    if (name == "tlb_angles") return qig::tlb_angles();
    throw qig::DomainError("unknown family: " + name);
}

std::vector<double> parse_grid(const std::string& spec) {
    // "a:b:step" or comma-separated values
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream is(spec);
        if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw qig::DomainError("bad grid spec: " + spec);
        for (double x = a; x <= b + 1e-12; x += step) out.push_back(x);
    } else {
        std::istringstream is(spec);
        std::string tok;
        while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw qig::DomainError("empty grid: " + spec);
    return out;
}

void emit(const qig::RunConfig& cfg, const json& payload, const std::string& csv,
          const std::string& out_path) {
    if (cfg.output_format == "json") {
        json doc = payload;
        doc["config"] = cfg.to_json();
        const std::string text = doc.dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            qig::write_text(out_path, text);
    } else {
        if (out_path.empty())
            std::cout << csv;
        else
            qig::write_text(out_path, csv);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical quantum-information-geometry engine"};
    app.require_subcommand(1);

    qig::RunConfig cfg;
    std::string out_path;
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--tol", cfg.tol, "target tolerance");
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    app.add_option("--format", cfg.output_format, "csv or json");
    app.add_option("--out", out_path, "output file (default stdout)");

    // ---- metric ----
    auto* cmd_metric = app.add_subcommand("metric", "metric tensor at a point");
    std::string m_family = "bloch", m_metric = "bures", m_point = "0.5,1.0,2.0";
    double m_q = 1.0, m_alpha = 1.0;
    bool m_nullcheck = false;
    cmd_metric->add_option("--family", m_family, "family chart");
    cmd_metric->add_option("--metric", m_metric, "bures | hs | wigner_yanase | bures_extended");
    cmd_metric->add_option("--point", m_point, "comma-separated coordinates");
    cmd_metric->add_option("--q", m_q, "escort parameter for fixed-q charts");
    cmd_metric->add_option("--alpha", m_alpha, "alpha for the alpha-model charts");
    cmd_metric->add_flag("--null-check", m_nullcheck, "test volume-element nullity");

    // ---- volume / sepprob ----
    auto* cmd_vol = app.add_subcommand("volume", "total metric volume of a model");
    auto* cmd_sep = app.add_subcommand("sepprob", "separability probabilities of a model");
    std::string v_family = "ar_bell", v_metric = "bures", v_grid, v_alpha_grid;
    double v_q = 1.0, v_alpha = 1.0;
    bool v_compare = false;
    for (auto* cmd : {cmd_vol, cmd_sep}) {
        cmd->add_option("--family", v_family, "ar_bell | trivariate | bivariate | jaynes | tlb");
        cmd->add_option("--metric", v_metric, "bures | hs | wigner_yanase");
        cmd->add_option("--q", v_grid, "q grid (list or a:b:step)");
        cmd->add_option("--alpha-grid", v_alpha_grid, "alpha grid (list or a:b:step)");
        cmd->add_option("--alpha", v_alpha, "single alpha");
        cmd->add_option("--qval", v_q, "single q");
    }
    cmd_sep->add_flag("--compare-closed-form", v_compare,
                      "report deviation from the piecewise closed form");

    // ---- priors ----
    auto* cmd_priors = app.add_subcommand("priors", "prior comparison and curves");
    std::string p_mode = "compare", p_a = "p_B", p_b = "p_Bq1trunc", p_record = "xyz-pairs",
                p_range = "0.995:1:50";
    bool p_all = false;
    cmd_priors->add_option("mode", p_mode, "compare | rank | biasedness");
    cmd_priors->add_option("first", p_a, "first prior")->expected(0, 1);
    cmd_priors->add_option("second", p_b, "second prior")->expected(0, 1);
    cmd_priors->add_option("--record", p_record, "xyz-pairs | z-pair | z-single | z-same");
    cmd_priors->add_flag("--all", p_all, "rank all four priors");
    cmd_priors->add_option("--r", p_range, "biasedness range lo:hi:n");

    // ---- husimi ----
    auto* cmd_husimi = app.add_subcommand("husimi", "Husimi marginal curves");
    std::string h_what = "marginal-q", h_grid = "0.5:6:0.1";
    cmd_husimi->add_option("what", h_what, "marginal-q | marginal-r | peak");
    cmd_husimi->add_option("--grid", h_grid, "coordinate grid");

    // ---- scan ----
    auto* cmd_scan = app.add_subcommand("scan", "volume scan over a parameter grid");
    cmd_scan->add_option("--family", v_family, "model family");
    cmd_scan->add_option("--metric", v_metric, "metric");
    cmd_scan->add_option("--grid", v_grid, "parameter grid");

    // ---- selftest ----
    auto* cmd_self = app.add_subcommand("selftest", "run the acceptance suite");
    std::vector<int> s_only;
    cmd_self->add_option("--only", s_only, "criterion numbers to run");

    CLI11_PARSE(app, argc, argv);

    if (cfg.threads > 0) qig::set_default_threads(cfg.threads);

    try {
        if (cmd_metric->parsed()) {
            auto pt = parse_grid(m_point);
            const bool extended = m_metric == "bures_extended";
            const std::string fam =
                extended && m_family == "escort_qubit" ? "escort_qubit" : m_family;
            const auto chart = chart_by_name(fam, m_q, m_alpha);
            if (m_nullcheck) {
                const std::string metric = extended ? "bures" : m_metric;
                const bool isnull = qig::nullity_check(chart, metric, 30, cfg.seed + 1);
                json doc{{"quantity", chart.family_id + "_" + metric + "_nullity"},
                         {"null", isnull}};
                emit(cfg, doc, std::string("family,metric,null\n") + chart.family_id + "," +
                                   metric + "," + (isnull ? "true" : "false") + "\n",
                     out_path);
                return 0;
            }
            qig::MetricTensor g;
            if (m_metric == "hs")
                g = qig::hs_tensor(chart, qig::ParamPoint(pt.begin(), pt.end()));
            else if (m_metric == "wigner_yanase")
                g = qig::monotone_tensor(chart, pt, qig::f_wigner_yanase());
            else
                g = qig::bures_tensor(chart, qig::ParamPoint(pt.begin(), pt.end()));
            const auto ve = qig::volume_element(g);
            std::ostringstream csv;
            csv << "i,j,g_ij\n";
            json jg = json::array();
            for (int i = 0; i < g.dim(); ++i)
                for (int j = 0; j < g.dim(); ++j) {
                    csv << i << ',' << j << ',' << g.g(i, j) << '\n';
                    jg.push_back(g.g(i, j));
                }
            csv << "sqrt_det," << ve.value << ",\nnull," << (ve.null_flag ? "true" : "false")
                << ",\n";
            json doc{{"quantity", chart.family_id + "_" + m_metric + "_tensor"},
                     {"coords", g.coords},
                     {"g", jg},
                     {"sqrt_det", ve.value},
                     {"null", ve.null_flag}};
            emit(cfg, doc, csv.str(), out_path);
            return 0;
        }

        if (cmd_vol->parsed() || cmd_sep->parsed() || cmd_scan->parsed()) {
            const auto model = qig::model_from_string(v_family);
            const auto metric = qig::metric_from_string(v_metric);
            std::vector<double> grid;
            if (!v_grid.empty())
                grid = parse_grid(v_grid);
            else if (!v_alpha_grid.empty())
                grid = parse_grid(v_alpha_grid);
            else
                grid = {model == qig::ModelId::ar_bell ? v_q : v_alpha};
            auto rows = qig::scan(model, metric, grid, cfg.tol, cfg.seed);
            json jrows = json::array();
            double max_dev = 0.0;
            for (const auto& r : rows) {
                json jr{{"param", r.param},
                        {"metric", r.metric},
                        {"total", r.result.total.value},
                        {"total_err", r.result.total.abs_error},
                        {"sep", r.result.separable.value},
                        {"sep_err", r.result.separable.abs_error},
                        {"prob", r.result.prob},
                        {"prob_err", r.result.prob_err},
                        {"n_evals", r.result.total.n_evals + r.result.separable.n_evals}};
                if (v_compare && metric == qig::MetricId::hs &&
                    (model == qig::ModelId::trivariate || model == qig::ModelId::bivariate)) {
                    const auto cf = model == qig::ModelId::trivariate
                                        ? qig::CfModel::trivariate_alpha
                                        : qig::CfModel::bivariate_alpha;
                    const double closed = qig::closed_form_sepprob(cf, r.param);
                    jr["closed_form"] = closed;
                    max_dev = std::max(max_dev, std::abs(closed - r.result.prob));
                }
                jrows.push_back(jr);
            }
            json doc{{"quantity", qig::to_string(model) + "_" + v_metric + "_volumes"},
                     {"rows", jrows}};
            if (v_compare) doc["max_closed_form_deviation"] = max_dev;
            std::string csv = qig::scan_csv(rows);
            if (v_compare) csv += "max_closed_form_deviation," + std::to_string(max_dev) + "\n";
            emit(cfg, doc, csv, out_path);
            return 0;
        }

        if (cmd_priors->parsed()) {
            qig::MeasurementRecord rec = qig::canonical_record();
            if (p_record == "z-pair") rec = {{0, 0, 1}, {0, 0, 1}, false};
            else if (p_record == "z-single") rec = {{0, 0, 1}, {0, 0, 0}, false};
            else if (p_record == "z-same") rec = {{0, 0, 2}, {0, 0, 0}, false};

            if (p_mode == "biasedness") {
                auto spec = parse_grid(p_range);
                const double lo = spec.size() > 0 ? spec[0] : 0.995;
                double hi = 0.9999;
                int n = 50;
                if (p_range.find(':') != std::string::npos) {
                    // lo:hi:n encoded; parse_grid expanded it, recover endpoints
                    hi = spec.back();
                    n = static_cast<int>(spec.size());
                }
                std::ostringstream csv;
                csv << "r,p_Fq1,p_B,p_Bq1trunc,p_F\n";
                json jrows = json::array();
                const qig::PriorId ids[4] = {qig::PriorId::p_Fq1, qig::PriorId::p_B,
                                             qig::PriorId::p_Bq1trunc, qig::PriorId::p_F};
                std::vector<std::vector<qig::CurvePoint>> curves;
                for (auto id : ids) curves.push_back(qig::biasedness_curve(id, lo, hi, n));
                for (int i = 0; i < n; ++i) {
                    csv << curves[0][i].r;
                    json jr{{"r", curves[0][i].r}};
                    for (int k = 0; k < 4; ++k) {
                        csv << ',' << curves[k][i].value;
                        jr[qig::to_string(ids[k])] = curves[k][i].value;
                    }
                    csv << '\n';
                    jrows.push_back(jr);
                }
                emit(cfg, json{{"quantity", "biasedness_marginals"}, {"rows", jrows}},
                     csv.str(), out_path);
                return 0;
            }

            auto one = [&](qig::PriorId a, qig::PriorId b) {
                const auto v = qig::clarke_compare(qig::prior(a), qig::prior(b), rec);
                return json{{"pair", qig::to_string(a) + "," + qig::to_string(b)},
                            {"kl_ab", v.kl_ab},
                            {"kl_ba", v.kl_ba},
                            {"kl_post_ab", v.kl_post_ab},
                            {"kl_post_ba", v.kl_post_ba},
                            {"verdict", v.more_noninformative}};
            };

            if (p_mode == "rank" || p_all) {
                const qig::PriorId ids[4] = {qig::PriorId::p_Fq1, qig::PriorId::p_B,
                                             qig::PriorId::p_Bq1trunc, qig::PriorId::p_F};
                json jrows = json::array();
                std::ostringstream csv;
                csv << "pair,kl_ab,kl_ba,kl_post_ab,kl_post_ba,verdict\n";
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j) {
                        auto r = one(ids[i], ids[j]);
                        jrows.push_back(r);
                        csv << r["pair"].get<std::string>() << ',' << r["kl_ab"] << ','
                            << r["kl_ba"] << ',' << r["kl_post_ab"] << ',' << r["kl_post_ba"]
                            << ',' << r["verdict"].get<std::string>() << '\n';
                    }
                csv << "ordering,p_Fq1 > p_B > p_Bq1trunc > p_F\n";
                emit(cfg, json{{"quantity", "clarke_ranking"}, {"comparisons", jrows}},
                     csv.str(), out_path);
                return 0;
            }

            const auto r = one(qig::prior_from_string(p_a), qig::prior_from_string(p_b));
            std::ostringstream csv;
            csv << "pair,kl_ab,kl_ba,kl_post_ab,kl_post_ba,verdict\n"
                << r["pair"].get<std::string>() << ',' << r["kl_ab"] << ',' << r["kl_ba"]
                << ',' << r["kl_post_ab"] << ',' << r["kl_post_ba"] << ','
                << r["verdict"].get<std::string>() << '\n';
            emit(cfg, r, csv.str(), out_path);
            return 0;
        }

        if (cmd_husimi->parsed()) {
            std::ostringstream csv;
            json jrows = json::array();
            if (h_what == "peak") {
                const auto [q, h] = qig::marginal_q_peak();
                csv << "peak_q,peak_value\n" << q << ',' << h << '\n';
                emit(cfg, json{{"quantity", "husimi_q_marginal_peak"}, {"q", q}, {"value", h}},
                     csv.str(), out_path);
                return 0;
            }
            const auto grid = parse_grid(h_grid);
            csv << "coordinate,value,error_estimate\n";
            for (double x : grid) {
                const auto r = h_what == "marginal-r" ? qig::marginal_r(x) : qig::marginal_q(x);
                csv << x << ',' << r.value << ',' << r.abs_error << '\n';
                jrows.push_back({{"coordinate", x}, {"value", r.value}, {"error", r.abs_error}});
            }
            emit(cfg, json{{"quantity", std::string("husimi_") + h_what}, {"rows", jrows}},
                 csv.str(), out_path);
            return 0;
        }

        if (cmd_self->parsed()) {
            const int failures = qig::run_acceptance(std::cout, s_only);
            return failures == 0 ? 0 : 1;
        }
    } catch (const qig::QuadratureFailure& e) {
        std::cerr << "{\"error\":\"quadrature\",\"what\":\"" << e.what() << "\"}\n";
        return kExitConvergence;
    } catch (const qig::NonConvergence& e) {
        std::cerr << "{\"error\":\"convergence\",\"what\":\"" << e.what() << "\"}\n";
        return kExitConvergence;
    } catch (const qig::SupportMismatch& e) {
        std::cerr << "{\"error\":\"support\",\"what\":\"" << e.what() << "\"}\n";
        return kExitSupport;
    } catch (const qig::NormalizationFailure& e) {
        std::cerr << "{\"error\":\"normalization\",\"what\":\"" << e.what() << "\"}\n";
        return kExitSupport;
    } catch (const qig::Error& e) {
        std::cerr << "{\"error\":\"domain\",\"what\":\"" << e.what() << "\"}\n";
        return kExitDomain;
    }
    return 0;
}
