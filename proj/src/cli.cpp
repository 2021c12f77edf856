#include "asvlim/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "asvlim/limit.hpp"
#include "asvlim/mc.hpp"
#include "asvlim/mgf.hpp"
#include "asvlim/smile.hpp"

namespace asvlim {

namespace {

const char* case_name(DomainCase c) {
    switch (c) {
        case DomainCase::IA: return "IA";
        case DomainCase::IB: return "IB";
        case DomainCase::IIA: return "IIA";
        case DomainCase::IIB: return "IIB";
    }
    return "?";
}

const char* region_name(RateRegion r) {
    switch (r) {
        case RateRegion::Convex: return "convex";
        case RateRegion::AffineRight: return "affine_right";
        case RateRegion::AffineLeft: return "affine_left";
    }
    return "?";
}

const char* smile_region_name(SmileRegion r) {
    switch (r) {
        case SmileRegion::Central: return "central";
        case SmileRegion::LeftWing: return "left_wing";
        case SmileRegion::RightWing: return "right_wing";
        case SmileRegion::Threshold: return "threshold";
        case SmileRegion::DegenerateLinear: return "degenerate_linear";
        case SmileRegion::DegenerateFlat: return "degenerate_flat";
    }
    return "?";
}

Table::Cell ext_cell(const ExtReal& v) {
    if (v.is_pos_inf()) return std::string("inf");
    if (v.is_neg_inf()) return std::string("-inf");
    return v.value();
}

// Non-finite doubles (the |rho| = 1 slope wall) must not reach the JSON
// writer, which has no representation for them; emit them as strings in both
// formats so the csv/json value equality holds unconditionally.
Table::Cell num_cell(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return std::string("nan");
    return std::string(v > 0 ? "inf" : "-inf");
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return xs;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size())
            throw UsageError("invalid number in list: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty numeric list");
    return out;
}

Command command_from_name(const std::string& name) {
    if (name == "domain") return Command::Domain;
    if (name == "rate") return Command::Rate;
    if (name == "smile") return Command::Smile;
    if (name == "price-asymptote") return Command::PriceAsymptote;
    if (name == "mc-check") return Command::McCheck;
    if (name == "selftest") return Command::Selftest;
    throw UsageError("unknown command: " + name);
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    // Raw values first; the admissibility check happens on construction.
    double a = 0.0, b = 0.08, alpha = 0.04, beta = -2.0, rho = -0.5, v0 = 0.04;
    double x0 = 0.0;
    RunConfig cfg;
    std::string format_name = "csv";
    std::string u_text, tgrid_text, config_path;
    double x_tail = 0.0;
    bool have_x_tail = false;

    // A --config file pre-loads the same keys; explicit flags override it.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config requires a file path");
            config_path = args[i + 1];
        }
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot open config file: " + config_path);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            throw UsageError(std::string("invalid JSON config: ") + e.what());
        }
        const auto num_list = [](const nlohmann::json& v) {
            if (v.is_string()) return parse_list(v.get<std::string>());
            std::vector<double> out;
            for (const auto& e : v) out.push_back(e.get<double>());
            if (out.empty()) throw UsageError("empty numeric list in config");
            return out;
        };
        try {
            for (const auto& [key, val] : doc.items()) {
                if (key == "a") a = val.get<double>();
                else if (key == "b") b = val.get<double>();
                else if (key == "alpha") alpha = val.get<double>();
                else if (key == "beta") beta = val.get<double>();
                else if (key == "rho") rho = val.get<double>();
                else if (key == "v0") v0 = val.get<double>();
                else if (key == "x0") x0 = val.get<double>();
                else if (key == "x-min") cfg.x_min = val.get<double>();
                else if (key == "x-max") cfg.x_max = val.get<double>();
                else if (key == "n") cfg.n_points = val.get<int>();
                else if (key == "t") cfg.t = val.get<double>();
                else if (key == "out") cfg.output_path = val.get<std::string>();
                else if (key == "format") format_name = val.get<std::string>();
                else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
                else if (key == "n-paths") cfg.n_paths = val.get<std::size_t>();
                else if (key == "dt") cfg.dt = val.get<double>();
                else if (key == "u") cfg.u_list = num_list(val);
                else if (key == "x") { x_tail = val.get<double>(); have_x_tail = true; }
                else if (key == "t-grid") cfg.t_grid = num_list(val);
                else throw UsageError("unknown key in config file: " + key);
            }
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("invalid value in config file: ") + e.what());
        }
    }

    CLI::App app{"large-maturity asymptotics of continuous affine stochastic "
                 "volatility models"};
    app.require_subcommand(1);

    app.add_option("--a", a, "constant variance offset (a >= 0)");
    app.add_option("--b", b, "constant drift of V (b >= 0)");
    app.add_option("--alpha", alpha, "squared vol-of-variance (alpha > 0)");
    app.add_option("--beta", beta, "linear drift coefficient of V");
    app.add_option("--rho", rho, "correlation in [-1,1]");
    app.add_option("--v0", v0, "initial variance (v0 > 0)");
    app.add_option("--x0", x0, "initial log price");
    app.add_option("--x-min", cfg.x_min, "left end of the x grid");
    app.add_option("--x-max", cfg.x_max, "right end of the x grid");
    app.add_option("--n", cfg.n_points, "number of grid points");
    app.add_option("--t", cfg.t, "maturity (domain, mc-check)");
    app.add_option("--out", cfg.output_path, "output file (default stdout)");
    app.add_option("--format", format_name, "csv or json");
    app.add_option("--seed", cfg.seed, "Monte Carlo seed");
    app.add_option("--n-paths", cfg.n_paths, "Monte Carlo paths");
    app.add_option("--dt", cfg.dt, "Monte Carlo time step");
    app.add_option("--u", u_text, "comma-separated u list (mc-check MGF mode)");
    auto* xopt = app.add_option("--x", x_tail, "tail threshold (mc-check rate mode)");
    app.add_option("--t-grid", tgrid_text, "comma-separated maturities (rate mode)");
    std::string config_dummy;
    app.add_option("--config", config_dummy, "JSON file with the same keys");

    std::vector<std::string> names{"domain", "rate",     "smile",
                                   "price-asymptote",    "mc-check", "selftest"};
    for (const auto& n : names) app.add_subcommand(n)->fallthrough();

    // CLI11 wants the arguments reversed and without the program name.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const auto subs = app.get_subcommands();
    if (subs.size() != 1) throw UsageError("expected exactly one command");
    cfg.command = command_from_name(subs.front()->get_name());

    if (format_name == "csv") cfg.format = OutputFormat::Csv;
    else if (format_name == "json") cfg.format = OutputFormat::Json;
    else throw UsageError("format must be 'csv' or 'json'");

    if (!u_text.empty()) cfg.u_list = parse_list(u_text);
    if (!tgrid_text.empty()) cfg.t_grid = parse_list(tgrid_text);
    if (xopt->count() > 0) have_x_tail = true;
    if (have_x_tail) cfg.x_tail = x_tail;

    if (!(cfg.x_min < cfg.x_max)) throw UsageError("x-min must be below x-max");
    if (cfg.n_points < 2) throw UsageError("n must be at least 2");
    if (!(cfg.t > 0.0)) throw UsageError("t must be positive");

    try {
        cfg.params = ModelParams(a, b, alpha, beta, rho, v0, x0);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

namespace {

Table run_domain(const RunConfig& cfg) {
    Table t;
    t.columns = {"class", "u_minus", "u_plus", "lower_t", "upper_t"};
    const auto d = domain_at(cfg.t, cfg.params);
    const auto cm = critical_moments(cfg.params);
    t.rows.push_back({std::string(case_name(d.cls)), ext_cell(cm.u_minus),
                      ext_cell(cm.u_plus), ext_cell(d.lower), ext_cell(d.upper)});
    return t;
}

Table run_rate(const RunConfig& cfg) {
    Table t;
    t.columns = {"x", "lambda_star", "u_star", "region"};
    const LimitCgf L = boundary_limits(cfg.params);
    for (double x : grid(cfg.x_min, cfg.x_max, cfg.n_points)) {
        const RateEval r = rate(x, L);
        Table::Cell ustar = r.u_star ? Table::Cell(*r.u_star) : Table::Cell(std::string());
        t.rows.push_back({x, num_cell(r.value), ustar, std::string(region_name(r.region))});
    }
    return t;
}

Table run_smile(const RunConfig& cfg) {
    Table t;
    t.columns = {"x", "var_inf", "vol_inf", "selector", "region", "svi_var"};
    const LimitCgf L = boundary_limits(cfg.params);
    for (double x : grid(cfg.x_min, cfg.x_max, cfg.n_points)) {
        const SmilePoint s = implied_var_infinity(x, L);
        Table::Cell svi = s.svi_var ? Table::Cell(*s.svi_var) : Table::Cell(std::string());
        t.rows.push_back({x, num_cell(s.var_inf), num_cell(std::sqrt(std::max(s.var_inf, 0.0))),
                          static_cast<std::int64_t>(s.selector),
                          std::string(smile_region_name(s.region)), svi});
    }
    return t;
}

Table run_price_asymptote(const RunConfig& cfg) {
    Table t;
    t.columns = {"x", "kind", "exponent", "branch", "flagged"};
    const LimitCgf L = boundary_limits(cfg.params);
    const auto push = [&t](const OptionAsymptote& o, const char* kind) {
        t.rows.push_back({o.x, std::string(kind), num_cell(o.exponent),
                          std::string(o.branch == AsymptoteBranch::ViaRate
                                          ? "rate"
                                          : "boundary"),
                          static_cast<std::int64_t>(o.flagged ? 1 : 0)});
    };
    for (double x : grid(cfg.x_min, cfg.x_max, cfg.n_points)) {
        push(option_asymptote(x, L, OptionKind::Put), "put");
        push(option_asymptote(x, L, OptionKind::Call), "call");
        if (x >= L.dlam0_plus && x <= L.dlam1_minus)
            push(option_asymptote(x, L, OptionKind::CoveredCall), "covered_call");
    }
    return t;
}

Table run_mc_check(const RunConfig& cfg) {
    Table t;
    t.columns = {"t", "x_or_u", "estimate", "std_err", "target"};
    SimConfig sim;
    sim.n_paths = cfg.n_paths;
    sim.dt = cfg.dt;
    sim.seed = cfg.seed;

    if (cfg.x_tail) {
        const LimitCgf L = boundary_limits(cfg.params);
        const double target = rate(*cfg.x_tail, L).value;
        const auto points = mc_ldp_rate(*cfg.x_tail, cfg.t_grid, cfg.params, sim);
        for (const auto& pt : points) {
            Table::Cell se = pt.zero_hit ? Table::Cell(std::string("inf"))
                                         : Table::Cell(pt.estimate.std_error);
            t.rows.push_back(
                {pt.t, *cfg.x_tail, pt.estimate.value, se, num_cell(target)});
        }
        return t;
    }

    sim.t_final = cfg.t;
    const auto samples = simulate_terminal(cfg.params, sim);
    for (double u : cfg.u_list) {
        const auto est = mc_mgf_check(u, samples, cfg.params);
        t.rows.push_back({cfg.t, u, est.value, est.std_error,
                          ext_cell(lambda_t(u, cfg.t, cfg.params))});
    }
    return t;
}

Table selftest_table(const std::vector<SelfCheck>& checks) {
    Table t;
    t.columns = {"check", "status", "detail"};
    for (const auto& c : checks)
        t.rows.push_back({c.name, std::string(c.pass ? "PASS" : "FAIL"), c.detail});
    return t;
}

}  // namespace

RunOutput run_command(const RunConfig& cfg) {
    RunOutput out;
    switch (cfg.command) {
        case Command::Domain: out.table = run_domain(cfg); break;
        case Command::Rate: out.table = run_rate(cfg); break;
        case Command::Smile: out.table = run_smile(cfg); break;
        case Command::PriceAsymptote: out.table = run_price_asymptote(cfg); break;
        case Command::McCheck: out.table = run_mc_check(cfg); break;
        case Command::Selftest: {
            const auto checks = run_selftest();
            out.table = selftest_table(checks);
            for (const auto& c : checks) out.ok = out.ok && c.pass;
            break;
        }
    }
    return out;
}

int emit_report(const RunOutput& out, const RunConfig& cfg) {
    const std::string text =
        cfg.format == OutputFormat::Csv ? to_csv(out.table) : to_json(out.table);
    if (cfg.output_path.empty()) {
        std::cout << text;
        return std::cout ? 0 : 1;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << cfg.output_path << "\n";
        return 1;
    }
    f << text;
    f.flush();
    if (!f) {
        std::cerr << "error: write failure: " << cfg.output_path << "\n";
        return 1;
    }
    return 0;
}

}  // namespace asvlim
