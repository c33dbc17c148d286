#pragma once

// Command-line front end: ml-eval, verify and scan. Exit codes: 0 success,
// 1 invalid input, 2 non-convergence or failed verification.

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmlcs/coherent.hpp"
#include "gmlcs/continuum.hpp"
#include "gmlcs/errors.hpp"
#include "gmlcs/measure.hpp"
#include "gmlcs/mlfunc.hpp"
#include "gmlcs/output.hpp"
#include "gmlcs/series.hpp"
#include "gmlcs/thermal.hpp"

namespace gmlcs::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kFailure = 2 };

struct ParamFlags {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double kpar = 1.0;

    void attach(CLI::App* app) {
        app->add_option("--alpha", alpha, "alpha > 0")->capture_default_str();
        app->add_option("--beta", beta, "beta > 0")->capture_default_str();
        app->add_option("--gamma", gamma, "gamma > 0")->capture_default_str();
        app->add_option("--kpar", kpar, "k > 0")->capture_default_str();
    }

    MLParams params() const { return {alpha, beta, gamma, kpar}; }

    void record(ordered_json& inputs) const {
        inputs["alpha"] = alpha;
        inputs["beta"] = beta;
        inputs["gamma"] = gamma;
        inputs["kpar"] = kpar;
    }
};

struct Result {
    OutputRecord record;
    Table table;
    bool tabular = false;
    int code = kOk;
};

namespace detail {

inline Result cmd_ml_eval(const ParamFlags& pf, double z, double rel_tol) {
    Result res;
    res.record.command = "ml-eval";
    pf.record(res.record.inputs);
    res.record.inputs["z"] = z;
    res.record.inputs["rel_tol"] = rel_tol;
    EvalConfig cfg;
    cfg.rel_tol = rel_tol;
    const MLParams p = pf.params();
    cfg.validate();
    SeriesResult r;
    try {
        r = ml_eval(p, z, cfg);
    } catch (const convergence_error& e) {
        r = e.partial();
        res.record.diagnostics.push_back(e.what());
        res.code = kFailure;
    }
    res.record.results["value"] = r.value;
    res.record.results["terms_used"] = r.terms_used;
    res.record.results["tail_bound"] = r.tail_bound;
    res.record.results["converged"] = r.converged;
    res.table.header = {"value", "terms_used", "tail_bound", "converged"};
    res.table.rows.push_back({r.value, static_cast<double>(r.terms_used), r.tail_bound,
                              r.converged ? 1.0 : 0.0});
    return res;
}

inline void finish_verification(Result& res, double max_rel_err, double tol) {
    res.record.results["max_rel_err"] = max_rel_err;
    res.record.results["tolerance"] = tol;
    const bool passed = max_rel_err <= tol;
    res.record.results["passed"] = passed;
    res.code = passed ? kOk : kFailure;
}

inline Result verify_resolution_cmd(const ParamFlags& pf, int s_max, double tol) {
    Result res;
    res.record.command = "verify resolution";
    pf.record(res.record.inputs);
    res.record.inputs["s_max"] = s_max;
    const MomentReport rep = verify_resolution(pf.params(), s_max);
    res.record.results["s_values"] = rep.s_values;
    res.record.results["lhs"] = rep.lhs;
    res.record.results["rhs"] = rep.rhs;
    res.record.diagnostics = rep.diagnostics;
    res.table.header = {"s", "lhs", "rhs"};
    for (std::size_t i = 0; i < rep.s_values.size(); ++i) {
        res.table.rows.push_back({rep.s_values[i], rep.lhs[i], rep.rhs[i]});
    }
    finish_verification(res, rep.max_rel_err, tol);
    return res;
}

inline Result verify_moments_continuum_cmd(double tol) {
    Result res;
    res.record.command = "verify moments-continuum";
    const std::vector<double> energies = {0.0, 0.5, 1.0, 2.5, 7.0};
    res.record.inputs["energies"] = energies;
    std::vector<double> lhs, rhs;
    double worst = 0.0;
    for (double e : energies) {
        const double exact = std::tgamma(e + 1.0);
        double v = std::nan("");
        try {
            v = continuum_moment(e).value;
        } catch (const quadrature_error& ex) {
            res.record.diagnostics.push_back("E = " + format_number(e) + ": " + ex.what());
        }
        lhs.push_back(v);
        rhs.push_back(exact);
        const double err = std::abs(v - exact) / exact;
        worst = std::isnan(err) ? std::numeric_limits<double>::infinity() : std::max(worst, err);
    }
    res.record.results["s_values"] = energies;
    res.record.results["lhs"] = lhs;
    res.record.results["rhs"] = rhs;
    res.table.header = {"s", "lhs", "rhs"};
    for (std::size_t i = 0; i < energies.size(); ++i) {
        res.table.rows.push_back({energies[i], lhs[i], rhs[i]});
    }
    finish_verification(res, worst, tol);
    return res;
}

inline Result verify_laplace_cmd(const ParamFlags& pf, double s, double tol) {
    Result res;
    res.record.command = "verify laplace";
    pf.record(res.record.inputs);
    res.record.inputs["s"] = s;
    const MLParams p = pf.params();
    const double closed = ml_laplace(p, s);
    const QuadResult q = ml_laplace_quadrature(p, s);
    res.record.results["closed_form"] = closed;
    res.record.results["quadrature"] = q.value;
    res.record.results["quadrature_error"] = q.abs_error;
    res.table.header = {"closed_form", "quadrature"};
    res.table.rows.push_back({closed, q.value});
    finish_verification(res, std::abs(closed - q.value) / std::abs(closed), tol);
    return res;
}

inline Result verify_ansatz_cmd(double A, double B, double beta_B, int J, double tol) {
    Result res;
    res.record.command = "verify ansatz";
    res.record.inputs["A"] = A;
    res.record.inputs["B"] = B;
    res.record.inputs["betaB"] = beta_B;
    res.record.inputs["J"] = J;
    const AnsatzReport rep = partition_quadratic(ThermalConfig::quadratic(beta_B, A, B, J));
    res.record.results["ansatz"] = rep.series.value;
    res.record.results["direct"] = rep.direct;
    res.record.results["partial_sums"] = rep.partial_sums;
    res.record.results["terms_growing"] = rep.terms_growing;
    res.table.header = {"J", "partial_sum"};
    for (std::size_t j = 0; j < rep.partial_sums.size(); ++j) {
        res.table.rows.push_back({static_cast<double>(j), rep.partial_sums[j]});
    }
    if (rep.terms_growing) {
        res.record.diagnostics.push_back("ansatz terms grow at the truncation order");
    }
    finish_verification(res, rep.rel_diff, tol);
    return res;
}

struct GridFlags {
    double x_min = 0.0;
    double x_max = 1.0;
    int x_steps = 11;

    std::vector<double> points() const {
        if (!(x_min >= 0.0) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
            throw domain_error("grid bounds must be finite and non-negative");
        }
        if (x_steps < 1) {
            throw domain_error("x-steps must be at least 1");
        }
        if (x_max < x_min) {
            throw domain_error("x-max must not be below x-min");
        }
        if (x_steps == 1) {
            if (x_max != x_min) {
                throw domain_error("a single grid step needs x-min equal to x-max");
            }
            return {x_min};
        }
        std::vector<double> xs;
        for (int i = 0; i < x_steps; ++i) {
            xs.push_back(x_min + (x_max - x_min) * i / (x_steps - 1));
        }
        return xs;
    }
};

inline Result scan_cmd(const std::string& quantity, const ParamFlags& pf, const GridFlags& grid,
                       double x, double phase, double beta_B, bool literal) {
    Result res;
    res.tabular = true;
    res.record.command = "scan " + quantity;
    res.record.inputs["quantity"] = quantity;
    const bool continuum = quantity == "nu" || quantity == "husimi-cont" || quantity == "p-cont";
    if (!continuum) {
        pf.record(res.record.inputs);
    }
    if (quantity == "pn") {
        res.record.inputs["x"] = x;
        res.record.inputs["phase"] = phase;
        if (!(x >= 0.0)) {
            throw domain_error("x must be non-negative");
        }
        const PhotonDistribution d = photon_distribution(CSLabel(std::sqrt(x), phase), pf.params());
        res.table.header = {"n", "p"};
        for (std::size_t n = 0; n < d.p.size(); ++n) {
            res.table.rows.push_back({static_cast<double>(n), d.p[n]});
        }
        res.record.results["tail_mass"] = d.tail_mass;
        res.record.results["rows"] = res.table.to_json();
        return res;
    }
    res.record.inputs["x_min"] = grid.x_min;
    res.record.inputs["x_max"] = grid.x_max;
    res.record.inputs["x_steps"] = grid.x_steps;
    if (quantity != "nu") {
        res.record.inputs["betaB"] = beta_B;
    }
    if (quantity == "p-cont") {
        res.record.inputs["literal"] = literal;
    }
    const std::vector<double> xs = grid.points();
    res.table.header = {"x", "value"};
    for (double xv : xs) {
        const CSLabel z(std::sqrt(xv));
        double v = 0.0;
        if (quantity == "husimi") {
            v = husimi_q(z, pf.params(), ThermalConfig::linear_from(pf.params(), beta_B));
        } else if (quantity == "pfn") {
            v = p_function(z, pf.params(), ThermalConfig::linear_from(pf.params(), beta_B));
        } else if (quantity == "nu") {
            v = nu_function(xv);
        } else if (quantity == "husimi-cont") {
            v = continuum_husimi(z, beta_B);
        } else {
            v = continuum_p_function(z, beta_B,
                                     literal ? PConvention::literal
                                             : PConvention::discrete_reduction);
        }
        res.table.rows.push_back({xv, v});
    }
    res.record.results["rows"] = res.table.to_json();
    return res;
}

}  // namespace detail

/// Runs one command. Data goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized Mittag-Leffler functions and coherent states"};
    app.require_subcommand(1);
    std::string format = "json";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };

    ParamFlags pf;
    double z = 0.0;
    double rel_tol = 1e-12;
    auto* ml = app.add_subcommand("ml-eval", "evaluate E_{beta,alpha}^{gamma,k}(z)");
    pf.attach(ml);
    ml->add_option("--z", z, "real argument")->required();
    ml->add_option("--rel-tol", rel_tol, "relative tolerance")->capture_default_str();
    add_format(ml);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    int s_max = 10;
    double tol = -1.0;
    auto* v_res = verify->add_subcommand("resolution", "moment identity of the measure");
    pf.attach(v_res);
    v_res->add_option("--s-max", s_max, "largest moment order")->capture_default_str();
    v_res->add_option("--tol", tol, "pass threshold (default 1e-6)");
    auto* v_cont = verify->add_subcommand("moments-continuum", "continuum measure moments");
    v_cont->add_option("--tol", tol, "pass threshold (default 1e-7)");
    double s = 2.0;
    auto* v_lap = verify->add_subcommand("laplace", "Laplace transform, closed form vs quadrature");
    pf.attach(v_lap);
    v_lap->add_option("--s", s, "transform variable")->capture_default_str();
    v_lap->add_option("--tol", tol, "pass threshold (default 1e-8)");
    double A = 1.0, B = 0.05, beta_B = 1.0;
    int J = 8;
    auto* v_ans = verify->add_subcommand("ansatz", "quadratic-spectrum partition ansatz");
    v_ans->add_option("--A", A, "linear coefficient")->capture_default_str();
    v_ans->add_option("--B", B, "quadratic coefficient")->capture_default_str();
    v_ans->add_option("--betaB", beta_B, "inverse temperature")->capture_default_str();
    v_ans->add_option("--J", J, "truncation order")->capture_default_str();
    v_ans->add_option("--tol", tol, "pass threshold (default 1e-5)");

    auto* scan = app.add_subcommand("scan", "tabulate a quantity on a grid");
    std::string quantity;
    scan->add_option("--quantity", quantity, "pn|husimi|pfn|nu|husimi-cont|p-cont")
        ->required()
        ->check(CLI::IsMember({"pn", "husimi", "pfn", "nu", "husimi-cont", "p-cont"}));
    pf.attach(scan);
    detail::GridFlags grid;
    scan->add_option("--x-min", grid.x_min, "grid start")->capture_default_str();
    scan->add_option("--x-max", grid.x_max, "grid end")->capture_default_str();
    scan->add_option("--x-steps", grid.x_steps, "number of grid points")->capture_default_str();
    double x = 1.0, phase = 0.0;
    scan->add_option("--x", x, "|z|^2 for the photon distribution")->capture_default_str();
    scan->add_option("--phase", phase, "label phase for the photon distribution");
    scan->add_option("--betaB", beta_B, "inverse temperature")->capture_default_str();
    bool literal = false;
    scan->add_flag("--literal", literal, "continuum P with the growing exponent");
    add_format(scan);
    for (auto* sub : {v_res, v_cont, v_lap, v_ans}) {
        add_format(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    Result res;
    try {
        if (ml->parsed()) {
            res = detail::cmd_ml_eval(pf, z, rel_tol);
        } else if (v_res->parsed()) {
            res = detail::verify_resolution_cmd(pf, s_max, tol < 0 ? 1e-6 : tol);
        } else if (v_cont->parsed()) {
            res = detail::verify_moments_continuum_cmd(tol < 0 ? 1e-7 : tol);
        } else if (v_lap->parsed()) {
            res = detail::verify_laplace_cmd(pf, s, tol < 0 ? 1e-8 : tol);
        } else if (v_ans->parsed()) {
            res = detail::verify_ansatz_cmd(A, B, beta_B, J, tol < 0 ? 1e-5 : tol);
        } else {
            res = detail::scan_cmd(quantity, pf, grid, x, phase, beta_B, literal);
        }
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }

    if (format == "csv") {
        write_csv(out, res.table);
    } else {
        write_json(out, res.record);
    }
    for (const auto& d : res.record.diagnostics) {
        err << "note: " << d << '\n';
    }
    return res.code;
}

}  // namespace gmlcs::cli
