#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlclab/analysis.hpp"
#include "rlclab/csv.hpp"
#include "rlclab/figures.hpp"
#include "rlclab/sim.hpp"
#include "rlclab/svg.hpp"

namespace rlclab {

constexpr const char* kToolVersion = "rlclab 1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIntegrity = 3;

namespace cli_detail {

inline std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Sweep grammar: name:lo:hi:step (e.g. "eps-d:0.01:0.1:0.01" or "n:4:30:1").
struct Sweep {
    std::string name;
    double lo = 0, hi = 0, step = 0;
};

inline Sweep parse_sweep(const std::string& text) {
    Sweep s;
    std::istringstream is(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(is, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 4) {
        throw CLI::ValidationError("--sweep", "expected name:lo:hi:step");
    }
    s.name = parts[0];
    try {
        s.lo = std::stod(parts[1]);
        s.hi = std::stod(parts[2]);
        s.step = std::stod(parts[3]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--sweep", "bounds must be numeric");
    }
    if (s.step <= 0 || s.hi < s.lo) {
        throw CLI::ValidationError("--sweep", "need step > 0 and hi >= lo");
    }
    return s;
}

inline std::vector<double> sweep_values(const Sweep& s) {
    std::vector<double> out;
    for (double v = s.lo; v <= s.hi + s.step * 1e-9; v += s.step) {
        out.push_back(v);
    }
    return out;
}

inline std::vector<double> parse_grid(const std::string& text, const char* flag) {
    const Sweep s = parse_sweep("x:" + text);
    (void)flag;
    return sweep_values(s);
}

inline std::uint64_t nondeterministic_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
           static_cast<std::uint64_t>(
               std::chrono::steady_clock::now().time_since_epoch().count());
}

inline std::size_t threads_from(std::size_t flag_value) {
    if (flag_value > 0) {
        return flag_value;
    }
    if (const char* env = std::getenv("RLCLAB_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return 0;  // auto
}

inline std::vector<std::string> scenario_csv_header() {
    return {"eps_d",         "eps_e", "n_max", "mode",   "trials",  "p_int",
            "p_int_ci_low",  "p_int_ci_high",  "p_dec",  "mean_n",  "nu_mean",
            "seed"};
}

inline std::vector<std::string> scenario_csv_row(const ScenarioRow& r) {
    return {format_number(r.eps_d),
            format_number(r.eps_e),
            std::to_string(r.n_max),
            r.mode,
            std::to_string(r.trials),
            format_number(r.p_int.p_hat),
            format_number(r.p_int.ci_low),
            format_number(r.p_int.ci_high),
            format_number(r.p_dec),
            format_number(r.mean_n),
            format_number(r.nu_mean),
            std::to_string(r.seed)};
}

inline void write_manifest(const std::string& path, const std::string& command,
                           const nlohmann::json& config, std::uint64_t base_seed,
                           const std::string& started,
                           const std::vector<std::string>& outputs) {
    nlohmann::json m;
    m["tool"] = kToolVersion;
    m["command"] = command;
    m["base_seed"] = base_seed;
    m["started_at"] = started;
    m["finished_at"] = iso_timestamp();
    m["config"] = config;
    m["outputs"] = outputs;
    std::ofstream os(path);
    os << m.dump(2) << '\n';
}

/// Shared SD-search flags for simulate and figure.
struct SdFlags {
    std::size_t t_max = 0;  // 0: derive from the eavesdropper channel
    std::uint64_t budget = SDConfig{}.candidate_budget;
    std::string verify = "oracle";
    bool iterate = false;
    std::size_t spark_limit = SDConfig{}.spark_columns_limit;

    void attach(CLI::App* cmd) {
        cmd->add_option("--t-max", t_max,
                        "SD weight cap per column (default: derived from the channel)");
        cmd->add_option("--budget", budget, "SD candidate budget per column");
        cmd->add_option("--verify", verify, "repair verification: oracle or crc32")
            ->check(CLI::IsMember({"oracle", "crc32"}));
        cmd->add_flag("--iterate", iterate, "re-run SD after promotions shrink the unknowns");
        cmd->add_option("--spark-limit", spark_limit,
                        "max unknowns for uniqueness certification");
    }

    SDConfig build(double eps_e, std::size_t l) const {
        SDConfig sd;
        sd.t_max = t_max > 0 ? t_max : default_t_max(ChannelSpec(eps_e, l));
        sd.candidate_budget = budget;
        sd.verify = verify == "crc32" ? SDConfig::Verify::Crc32 : SDConfig::Verify::Oracle;
        sd.iterate = iterate;
        sd.spark_columns_limit = spark_limit;
        return sd;
    }

    nlohmann::json to_json() const {
        return {{"t_max", t_max},
                {"budget", budget},
                {"verify", verify},
                {"iterate", iterate},
                {"spark_limit", spark_limit}};
    }
};

// ---------------------------------------------------------------- analytic

struct AnalyticArgs {
    std::size_t k = 0;
    std::uint32_t q = 2;
    double eps_d = 0.0;
    double eps_e = -1.0;  // absent
    std::size_t n_max = 0;
    std::string sweep;
    std::string out = "-";
};

inline int cmd_analytic(const AnalyticArgs& a) {
    const analysis::LinkParams dest{a.eps_d, a.k, a.q, a.n_max};
    dest.validate();
    std::optional<analysis::LinkParams> eav;
    if (a.eps_e >= 0.0) {
        eav = analysis::LinkParams{a.eps_e, a.k, a.q, a.n_max};
        eav->validate();
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (a.out != "-") {
        file.open(a.out);
        os = &file;
    }
    CsvWriter csv(*os);
    csv.header({"n", "eps_d", "eps_e", "k", "q", "n_max", "p_ns", "p_s", "cdf_f_d", "pmf_f_d",
                "p_dec", "p_int"});

    auto emit = [&](std::size_t n, double eps_d_val) {
        analysis::LinkParams d{eps_d_val, a.k, a.q, a.n_max};
        const double p_dec = analysis::decoding_prob(d);
        const double p_int =
            eav ? analysis::intercept_prob(d, *eav, a.n_max) : std::nan("");
        csv.row({std::to_string(n), format_number(eps_d_val),
                 format_number(eav ? eav->epsilon : std::nan("")), std::to_string(a.k),
                 std::to_string(a.q), std::to_string(a.n_max),
                 format_number(analysis::p_ns(n, a.k, a.q)),
                 format_number(analysis::p_s(a.n_max, n, a.k, a.q)),
                 format_number(analysis::cdf_F(n, d)), format_number(analysis::pmf_f(n, d)),
                 format_number(p_dec), format_number(p_int)});
    };

    if (a.sweep.empty()) {
        emit(a.n_max, a.eps_d);
        return kExitOk;
    }
    const Sweep sweep = parse_sweep(a.sweep);
    if (sweep.name == "eps-d") {
        for (const double v : sweep_values(sweep)) {
            emit(a.n_max, v);
        }
    } else if (sweep.name == "n") {
        for (const double v : sweep_values(sweep)) {
            const auto n = static_cast<std::size_t>(v + 0.5);
            if (n >= a.k && n <= a.n_max) {
                emit(n, a.eps_d);
            }
        }
    } else {
        throw CLI::ValidationError("--sweep", "unknown sweep variable: " + sweep.name);
    }
    return kExitOk;
}

// -------------------------------------------------------------------- plan

struct PlanArgs {
    double target = 0.99;
    std::size_t k = 0;
    std::uint32_t q = 2;
    double eps_d = 0.0;
    std::string sweep;
    std::string out = "-";
};

inline int cmd_plan(const PlanArgs& a) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (a.out != "-") {
        file.open(a.out);
        os = &file;
    }
    CsvWriter csv(*os);
    csv.header({"eps_d", "target", "n_max", "achieved_p_dec"});
    auto emit = [&](double eps) {
        const auto plan = analysis::plan_nmax(a.target, {eps, a.k, a.q, std::nullopt});
        csv.row({format_number(eps), format_number(a.target), std::to_string(plan.n_max),
                 format_number(plan.achieved)});
    };
    if (a.sweep.empty()) {
        emit(a.eps_d);
    } else {
        const Sweep sweep = parse_sweep(a.sweep);
        if (sweep.name != "eps-d") {
            throw CLI::ValidationError("--sweep", "plan sweeps over eps-d only");
        }
        for (const double v : sweep_values(sweep)) {
            emit(v);
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::size_t k = 20;
    std::size_t l = 128;
    std::uint32_t q = 2;
    double eps_d = 0.0;
    double eps_e = -1.0;
    double delta = -1.0;
    std::size_t n_max = 0;
    bool until_dest = false;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool nondeterministic = false;
    std::string mode = "rlc+sd";
    SdFlags sd;
    std::size_t safety_cap = 0;
    double cap_tolerance = 0.01;
    std::size_t threads = 0;
    std::string out = "simulate";
};

inline int cmd_simulate(SimulateArgs a) {
    if (!a.seed_set && !a.nondeterministic) {
        std::cerr << "simulate: --seed is required (or pass --nondeterministic)\n";
        return kExitUsage;
    }
    if (a.nondeterministic && !a.seed_set) {
        a.seed = nondeterministic_seed();
    }
    if (a.eps_e < 0.0 && a.delta < 0.0) {
        std::cerr << "simulate: set --eps-e or --delta\n";
        return kExitUsage;
    }
    if (!a.until_dest && a.n_max == 0) {
        std::cerr << "simulate: set --nmax or pass --until-dest\n";
        return kExitUsage;
    }
    const std::string started = iso_timestamp();

    ExperimentConfig cfg;
    cfg.k = a.k;
    cfg.l = a.l;
    cfg.q = a.q;
    cfg.eps_d = a.eps_d;
    cfg.eps_e = a.eps_e >= 0.0 ? a.eps_e : std::min(a.eps_d + a.delta, 1.0);
    cfg.stop = a.until_dest ? StopRule::until_destination_decodes()
                            : StopRule::fixed_n_max(a.n_max);
    cfg.trials = a.trials;
    cfg.base_seed = a.seed;
    cfg.safety_cap = a.safety_cap;
    if (a.mode == "rlc+sd") {
        cfg.ppr = a.sd.build(cfg.eps_e, cfg.l);
    }
    cfg.validate();
    if (cfg.eps_order_violated()) {
        std::cerr << "warning: eps_e < eps_d (eavesdropper better off than the destination)\n";
    }

    const ExperimentResult r = run_experiment(cfg, threads_from(a.threads));

    std::vector<ScenarioRow> rows;
    ScenarioRow base;
    base.eps_d = cfg.eps_d;
    base.eps_e = cfg.eps_e;
    base.n_max = a.until_dest ? 0 : a.n_max;
    base.trials = r.trials;
    base.p_dec = r.p_dec.p_hat;
    base.mean_n = r.mean_n;
    base.nu_mean = r.nu_mean;
    base.seed = cfg.base_seed;
    {
        ScenarioRow row = base;
        row.mode = "rlc";
        row.p_int = r.p_int_rlc;
        row.nu_mean = 0.0;
        rows.push_back(row);
    }
    if (cfg.ppr) {
        ScenarioRow row = base;
        row.mode = "rlc+sd";
        row.p_int = *r.p_int_sd;
        rows.push_back(row);
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    std::vector<std::string> outputs;
    const bool to_stdout = a.out == "-";
    if (!to_stdout) {
        outputs.push_back(a.out + ".csv");
        file.open(outputs.back());
        os = &file;
    }
    CsvWriter csv(*os);
    csv.header(scenario_csv_header());
    for (const auto& row : rows) {
        csv.row(scenario_csv_row(row));
    }
    if (!to_stdout) {
        file.close();
        nlohmann::json config{{"k", a.k},
                              {"l", a.l},
                              {"q", a.q},
                              {"eps_d", cfg.eps_d},
                              {"eps_e", cfg.eps_e},
                              {"stop", a.until_dest ? "until-dest" : "fixed"},
                              {"n_max", base.n_max},
                              {"trials", a.trials},
                              {"mode", a.mode},
                              {"safety_cap", cfg.effective_safety_cap()},
                              {"cap_tolerance", a.cap_tolerance},
                              {"sd", a.sd.to_json()}};
        write_manifest(a.out + ".manifest.json", "simulate", config, cfg.base_seed, started,
                       outputs);
    }

    if (cfg.stop.kind == StopKind::UntilDestinationDecodes &&
        static_cast<double>(r.safety_cap_hits) >
            a.cap_tolerance * static_cast<double>(r.trials)) {
        std::cerr << "warning: " << r.safety_cap_hits << "/" << r.trials
                  << " trials hit the safety cap\n";
        return kExitIntegrity;
    }
    return kExitOk;
}

// ------------------------------------------------------------------ figure

struct FigureArgs {
    std::string which;
    std::size_t k = 20;
    std::size_t l = 128;
    std::uint32_t q = 2;
    std::string eps_d_grid;
    std::vector<double> eps_e_values;
    std::vector<double> deltas;
    std::vector<std::size_t> n_max_values;
    double dec_target = 0.99;
    std::size_t trials = 5000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool nondeterministic = false;
    bool no_sd = false;
    bool no_analytic = false;
    SdFlags sd;
    std::size_t safety_cap = 0;
    std::size_t threads = 0;
    std::string out;
};

inline void write_figure_svg(const std::string& path, const std::string& title,
                             const std::vector<ScenarioRow>& rows) {
    SvgLinePlot plot(title, "eps_d", "P_int");
    plot.set_y_range(0.0, 1.0);
    std::vector<std::string> order;
    std::map<std::string, SvgLinePlot::Series> by_series;
    for (const auto& r : rows) {
        auto [it, inserted] = by_series.try_emplace(r.series);
        if (inserted) {
            it->second.label = r.series;
            it->second.dashed = r.mode == "rlc-analytic";
            order.push_back(r.series);
        }
        it->second.x.push_back(r.eps_d);
        it->second.y.push_back(r.p_int.p_hat);
    }
    for (const auto& key : order) {
        plot.add_series(by_series[key]);
    }
    std::ofstream os(path);
    plot.render(os);
}

inline int cmd_figure(FigureArgs a) {
    if (!a.seed_set && !a.nondeterministic) {
        std::cerr << "figure: --seed is required (or pass --nondeterministic)\n";
        return kExitUsage;
    }
    if (a.nondeterministic && !a.seed_set) {
        a.seed = nondeterministic_seed();
    }
    FigureId id;
    if (a.which == "fig2") {
        id = FigureId::Fig2;
    } else if (a.which == "fig3") {
        id = FigureId::Fig3;
    } else if (a.which == "fig4") {
        id = FigureId::Fig4;
    } else {
        std::cerr << "figure: unknown figure '" << a.which << "' (use fig2, fig3 or fig4)\n";
        return kExitUsage;
    }
    const std::string started = iso_timestamp();

    FigureParams p;
    p.k = a.k;
    p.l = a.l;
    p.q = a.q;
    if (!a.eps_d_grid.empty()) {
        p.eps_d_grid = parse_grid(a.eps_d_grid, "--eps-d-grid");
    }
    if (!a.eps_e_values.empty()) {
        p.eps_e_values = a.eps_e_values;
    }
    if (!a.deltas.empty()) {
        p.deltas = a.deltas;
    }
    if (!a.n_max_values.empty()) {
        p.n_max_values = a.n_max_values;
    }
    p.dec_target = a.dec_target;
    p.trials = a.trials;
    p.base_seed = a.seed;
    p.safety_cap = a.safety_cap;
    p.threads = threads_from(a.threads);
    p.with_sd = !a.no_sd;
    p.analytic_overlay = !a.no_analytic;
    p.sd_base = a.sd.build(0.5, a.l);  // t_max replaced per grid point unless pinned
    p.sd_auto_tmax = a.sd.t_max == 0;

    const auto rows = figure_scenario(id, p);

    const std::string prefix = a.out.empty() ? a.which : a.out;
    std::vector<std::string> outputs;

    outputs.push_back(prefix + ".csv");
    {
        std::ofstream os(outputs.back());
        CsvWriter csv(os);
        csv.header(scenario_csv_header());
        for (const auto& row : rows) {
            csv.row(scenario_csv_row(row));
        }
    }
    outputs.push_back(prefix + ".svg");
    write_figure_svg(outputs.back(), a.which + ": intercept probability", rows);

    if (id == FigureId::Fig3) {
        outputs.push_back(prefix + "_nmax.csv");
        std::ofstream os(outputs.back());
        CsvWriter csv(os);
        const std::string first_series = "delta=" + detail::format_g(p.deltas.front()) + " rlc";
        csv.header({"eps_d", "n_max"});
        for (const auto& row : rows) {
            if (row.mode == "rlc" && row.series == first_series) {
                csv.row({format_number(row.eps_d), std::to_string(row.n_max)});
            }
        }
    }
    if (id == FigureId::Fig4) {
        // P_dec depends only on (eps_d, n_max); one delta series carries it
        outputs.push_back(prefix + "_pdec.csv");
        std::ofstream os(outputs.back());
        CsvWriter csv(os);
        csv.header({"eps_d", "n_max", "p_dec"});
        for (const auto& row : rows) {
            const std::string wanted = "nmax=" + std::to_string(row.n_max) + " delta=" +
                                       detail::format_g(p.deltas.front()) + " rlc";
            if (row.mode == "rlc" && row.series == wanted) {
                csv.row({format_number(row.eps_d), std::to_string(row.n_max),
                         format_number(row.p_dec)});
            }
        }
    }

    nlohmann::json config{{"which", a.which},
                          {"k", a.k},
                          {"l", a.l},
                          {"q", a.q},
                          {"trials", a.trials},
                          {"dec_target", a.dec_target},
                          {"with_sd", p.with_sd},
                          {"analytic_overlay", p.analytic_overlay},
                          {"eps_d_grid", p.eps_d_grid},
                          {"eps_e_values", p.eps_e_values},
                          {"deltas", p.deltas},
                          {"n_max_values", p.n_max_values},
                          {"sd", a.sd.to_json()}};
    write_manifest(prefix + ".manifest.json", "figure", config, a.seed, started, outputs);
    return kExitOk;
}

}  // namespace cli_detail

/// Command-line front end. Returns the process exit code: 0 on success,
/// 2 on usage or configuration errors, 3 when a simulation finished but too
/// many trials hit the safety cap.
inline int run_cli(int argc, const char* const* argv) {
    using namespace cli_detail;
    CLI::App app{"Finite-field random linear coding laboratory: analytic probability stack, "
                 "broadcast simulator with an eavesdropper, and partial packet recovery"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "",
                   "key=value config file with [simulate] / [figure] sections; flags override");
    app.require_subcommand(1);

    AnalyticArgs an;
    auto* analytic = app.add_subcommand(
        "analytic", "closed-form probabilities (P_ns, P_s, CDF, PMF, P_dec, P_int)");
    analytic->add_option("--k", an.k, "source packet count")->required();
    analytic->add_option("--q", an.q, "field order (prime)");
    analytic->add_option("--eps-d", an.eps_d, "destination packet error probability")->required();
    analytic->add_option("--eps-e", an.eps_e, "eavesdropper packet error probability");
    analytic->add_option("--nmax", an.n_max, "transmission cap N_max")->required();
    analytic->add_option("--sweep", an.sweep, "grid: eps-d:lo:hi:step or n:lo:hi:step");
    analytic->add_option("-o,--out", an.out, "output CSV path ('-' for stdout)");

    PlanArgs pl;
    auto* plan = app.add_subcommand("plan", "smallest N_max reaching a target P_dec");
    plan->add_option("--target", pl.target, "decoding probability target");
    plan->add_option("--k", pl.k, "source packet count")->required();
    plan->add_option("--q", pl.q, "field order (prime)");
    plan->add_option("--eps-d", pl.eps_d, "destination packet error probability");
    plan->add_option("--sweep", pl.sweep, "grid: eps-d:lo:hi:step");
    plan->add_option("-o,--out", pl.out, "output CSV path ('-' for stdout)");

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo broadcast experiment");
    simulate->add_option("--k", sa.k, "source packet count");
    simulate->add_option("--l", sa.l, "packet length in symbols");
    simulate->add_option("--q", sa.q, "field order (prime)");
    simulate->add_option("--eps-d", sa.eps_d, "destination packet error probability")->required();
    simulate->add_option("--eps-e", sa.eps_e, "eavesdropper packet error probability");
    simulate->add_option("--delta", sa.delta, "eps_e = eps_d + delta");
    simulate->add_option("--nmax", sa.n_max, "fixed transmission cap");
    simulate->add_flag("--until-dest", sa.until_dest,
                       "transmit until the destination decodes (no cap)");
    simulate->add_option("--trials", sa.trials, "Monte Carlo trials");
    simulate->add_option("--seed", sa.seed, "base seed (mandatory unless --nondeterministic)");
    simulate->add_flag("--nondeterministic", sa.nondeterministic,
                       "draw the base seed from the system entropy source");
    simulate->add_option("--mode", sa.mode, "eavesdropper decoder: rlc or rlc+sd")
        ->check(CLI::IsMember({"rlc", "rlc+sd"}));
    sa.sd.attach(simulate);
    simulate->add_option("--safety-cap", sa.safety_cap,
                         "hard bound on transmissions per trial (default 20K)");
    simulate->add_option("--cap-tolerance", sa.cap_tolerance,
                         "max tolerated fraction of trials hitting the safety cap");
    simulate->add_option("--threads", sa.threads,
                         "worker threads (0 = auto; RLCLAB_THREADS respected)");
    simulate->add_option("-o,--out", sa.out, "output prefix ('-': CSV to stdout, no manifest)");

    FigureArgs fa;
    auto* figure = app.add_subcommand("figure", "run a full figure scenario (CSV + SVG)");
    figure->add_option("which", fa.which, "fig2, fig3 or fig4")->required();
    figure->add_option("--k", fa.k, "source packet count");
    figure->add_option("--l", fa.l, "packet length in symbols");
    figure->add_option("--q", fa.q, "field order (prime)");
    figure->add_option("--eps-d-grid", fa.eps_d_grid, "lo:hi:step grid for eps_d");
    figure->add_option("--eps-e", fa.eps_e_values, "Fig2 eps_e series values");
    figure->add_option("--delta", fa.deltas, "Fig3/Fig4 delta series values");
    figure->add_option("--nmax-values", fa.n_max_values, "Fig4 N_max values");
    figure->add_option("--dec-target", fa.dec_target, "Fig3 planner target");
    figure->add_option("--trials", fa.trials, "Monte Carlo trials per grid point");
    figure->add_option("--seed", fa.seed, "base seed (mandatory unless --nondeterministic)");
    figure->add_flag("--nondeterministic", fa.nondeterministic,
                     "draw the base seed from the system entropy source");
    figure->add_flag("--no-sd", fa.no_sd, "skip the RLC-with-SD eavesdropper");
    figure->add_flag("--no-analytic", fa.no_analytic, "skip analytic overlay rows");
    fa.sd.attach(figure);
    figure->add_option("--safety-cap", fa.safety_cap, "hard bound on transmissions per trial");
    figure->add_option("--threads", fa.threads,
                       "worker threads (0 = auto; RLCLAB_THREADS respected)");
    figure->add_option("-o,--out", fa.out, "output prefix (default: the figure name)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    sa.seed_set = simulate->count("--seed") > 0;
    fa.seed_set = figure->count("--seed") > 0;

    try {
        if (analytic->parsed()) {
            return cmd_analytic(an);
        }
        if (plan->parsed()) {
            return cmd_plan(pl);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sa);
        }
        if (figure->parsed()) {
            return cmd_figure(fa);
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace rlclab
