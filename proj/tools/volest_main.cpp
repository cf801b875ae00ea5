// volest: volatility estimation and evaluation toolkit.
//
// Subcommands: estimate, implied, simulate, evaluate, report.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
// Logs go to stderr; data goes to files and stdout only.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "volest/black_scholes.hpp"
#include "volest/csv.hpp"
#include "volest/errors.hpp"
#include "volest/pipeline.hpp"
#include "volest/rng.hpp"
#include "volest/simulate.hpp"

namespace {

using volest::DataError;
using volest::InvalidInput;
using volest::NumericError;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

[[noreturn]] void usage_error(const std::string& msg) {
    throw CLI::ValidationError(msg);
}

// ---------------------------------------------------------------------------
// key = value config files: file values fill options not set on the command
// line; every run echoes its fully resolved configuration for provenance.
// ---------------------------------------------------------------------------

struct ConfigBinding {
    std::string key;
    CLI::Option* opt = nullptr;
    std::function<void(const std::string&)> apply;
    std::function<std::string()> render;
};

class ConfigRegistry {
public:
    void bind_string(const std::string& key, CLI::Option* opt, std::string* target) {
        bindings_.push_back({key, opt, [target](const std::string& v) { *target = v; },
                             [target]() { return *target; }});
    }
    template <typename T>
    void bind_number(const std::string& key, CLI::Option* opt, T* target) {
        bindings_.push_back({key, opt,
                             [target, key](const std::string& v) {
                                 std::istringstream in(v);
                                 in >> *target;
                                 if (in.fail()) usage_error("config: bad value for " + key);
                             },
                             [target]() {
                                 std::ostringstream out;
                                 out.precision(17);
                                 out << *target;
                                 return out.str();
                             }});
    }

    void merge_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open config file: " + path);
        std::map<std::string, std::string> file_values;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                if (line.find_first_not_of(" \t\r") != std::string::npos) {
                    usage_error("config line " + std::to_string(line_no) + ": expected key = value");
                }
                continue;
            }
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) usage_error("config line " + std::to_string(line_no) + ": empty key");
            file_values[key] = value;
        }
        for (const auto& [key, value] : file_values) {
            bool known = false;
            for (ConfigBinding& b : bindings_) {
                if (b.key != key) continue;
                known = true;
                if (b.opt == nullptr || b.opt->count() == 0) b.apply(value);
                break;
            }
            if (!known) usage_error("config: unknown key '" + key + "'");
        }
    }

    std::string render() const {
        std::string out;
        for (const ConfigBinding& b : bindings_) {
            out += b.key + " = " + b.render() + "\n";
        }
        return out;
    }

private:
    std::vector<ConfigBinding> bindings_;
};

std::string format_full(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateArgs {
    std::string returns_path;
    std::string prices_path;
    std::string vix_path;
    std::string out_dir;
    std::string config_path;
    std::string return_kind = "log";
    std::string garch_dist = "t";
    int hsv_rolling = 1;
    int hsv_increasing = 1;
    int garch_rolling = 1;
    int garch_increasing = 1;
    std::size_t first_anchor = 253;
    std::size_t step = 20;
    std::size_t realized_len = 21;
    std::size_t rolling_window = 252;
    std::size_t garch_restarts = 3;
    std::size_t garch_min_window = 50;
    std::size_t gof_min_obs = 30;
    int annualization = 252;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

int run_estimate(const EstimateArgs& args, const ConfigRegistry& registry) {
    if (args.out_dir.empty()) usage_error("--out is required");
    if ((args.returns_path.empty()) == (args.prices_path.empty())) {
        usage_error("exactly one of --returns or --prices is required");
    }
    if (args.return_kind != "log" && args.return_kind != "simple") {
        usage_error("--return-kind must be log or simple");
    }
    if (args.garch_dist != "t" && args.garch_dist != "gaussian") {
        usage_error("--garch-dist must be t or gaussian");
    }

    volest::ReturnSeries returns;
    const volest::ReturnKind kind =
        args.return_kind == "log" ? volest::ReturnKind::log : volest::ReturnKind::simple;
    if (!args.returns_path.empty()) {
        const volest::DatedSeries s = volest::load_series_csv(args.returns_path, "date", "return");
        returns.dates = s.dates;
        returns.values = s.values;
        returns.kind = kind;
        std::cerr << "loaded " << returns.size() << " returns (" << to_iso_string(returns.dates.front())
                  << " .. " << to_iso_string(returns.dates.back()) << ")\n";
    } else {
        const volest::DatedSeries s = volest::load_series_csv(args.prices_path, "date", "close");
        returns = volest::compute_returns(s.dates, s.values, kind);
        std::cerr << "loaded " << s.size() << " prices -> " << returns.size() << " returns ("
                  << to_iso_string(returns.dates.front()) << " .. "
                  << to_iso_string(returns.dates.back()) << ")\n";
    }

    std::optional<volest::DatedSeries> vix;
    if (!args.vix_path.empty()) {
        vix = volest::load_series_csv(args.vix_path, "date", "close");
        std::cerr << "loaded " << vix->size() << " vix closes\n";
    }

    volest::PipelineConfig config;
    config.first_anchor = args.first_anchor;
    config.step = args.step;
    config.realized_len = args.realized_len;
    config.rolling_window = args.rolling_window;
    config.hsv_rolling = args.hsv_rolling != 0;
    config.hsv_increasing = args.hsv_increasing != 0;
    config.garch_rolling = args.garch_rolling != 0;
    config.garch_increasing = args.garch_increasing != 0;
    config.garch.dist = args.garch_dist == "t" ? volest::InnovationDist::student_t
                                               : volest::InnovationDist::gaussian;
    config.garch.restarts = args.garch_restarts;
    config.garch.min_obs = args.garch_min_window;
    config.gof_min_obs = args.gof_min_obs;
    config.annualization.trading_days_per_year = args.annualization;
    config.seed = args.seed;
    config.threads = args.threads;

    const volest::PipelineResult result = volest::run_pipeline(returns, vix, config);
    volest::emit_report(result.panel, result.eval, args.out_dir);
    volest::write_file((std::filesystem::path(args.out_dir) / "run_config.txt").string(),
                       registry.render());
    std::cerr << "wrote " << result.panel.size() << " panel rows to " << args.out_dir << "\n";
    for (const std::string& w : result.eval.warnings) std::cerr << "warning: " << w << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// implied
// ---------------------------------------------------------------------------

struct ImpliedArgs {
    std::string chain_path;
    double spot = 0.0;
    double rate = 0.0;
    double maturity = 0.0;
    double corridor_q = 0.25;
    std::vector<double> bounds;
};

int run_implied(const ImpliedArgs& args, bool bounds_given, bool q_given) {
    if (args.chain_path.empty()) usage_error("--chain is required");
    if (!(args.spot > 0.0)) usage_error("--spot must be positive");
    if (!(args.maturity > 0.0)) usage_error("--maturity must be positive");
    if (bounds_given && q_given) usage_error("--corridor-q and --bounds are mutually exclusive");
    if (bounds_given) {
        if (args.bounds.size() != 2 || !(args.bounds[0] < args.bounds[1])) {
            usage_error("--bounds requires L U with L < U");
        }
    }
    if (!(args.corridor_q > 0.0 && args.corridor_q < 0.5)) {
        usage_error("--corridor-q must lie in (0, 0.5)");
    }

    const volest::OptionChain chain =
        volest::load_chain_csv(args.chain_path, args.spot, args.rate, args.maturity);

    const double mfv = volest::model_free_variance(chain);
    double lower, upper;
    if (bounds_given) {
        lower = args.bounds[0];
        upper = args.bounds[1];
    } else {
        std::tie(lower, upper) = volest::corridor_bounds_from_quantiles(chain, args.corridor_q);
    }
    const double cv = volest::corridor_variance(chain, lower, upper);

    std::ostringstream out;
    out << "metric,value\n";
    out << "model_free_variance," << volest::format_g6(mfv) << "\n";
    out << "model_free_vol," << volest::format_g6(std::sqrt(mfv)) << "\n";
    out << "model_free_vix," << volest::format_g6(volest::vix_scale(mfv)) << "\n";
    out << "corridor_lower," << volest::format_g6(lower) << "\n";
    out << "corridor_upper," << volest::format_g6(upper) << "\n";
    out << "corridor_variance," << volest::format_g6(cv) << "\n";
    out << "corridor_vol," << volest::format_g6(std::sqrt(cv)) << "\n";
    out << "corridor_vix," << volest::format_g6(volest::vix_scale(cv)) << "\n";
    out << "\n";
    out << "strike,call_mid,put_mid,call_iv,put_iv\n";
    for (const volest::OptionQuote& q : chain.quotes()) {
        out << volest::format_g6(q.strike) << ",";
        out << (q.call_mid ? volest::format_g6(*q.call_mid) : "") << ",";
        out << (q.put_mid ? volest::format_g6(*q.put_mid) : "") << ",";
        auto invert = [&](double price, volest::OptionKind kind) -> std::string {
            try {
                return volest::format_g6(volest::implied_vol(price, args.spot, q.strike, args.rate,
                                                             args.maturity, kind));
            } catch (const std::exception& e) {
                std::cerr << "warning: strike " << q.strike << ": " << e.what() << "\n";
                return "";
            }
        };
        out << (q.call_mid ? invert(*q.call_mid, volest::OptionKind::call) : "") << ",";
        out << (q.put_mid ? invert(*q.put_mid, volest::OptionKind::put) : "") << "\n";
    }
    std::cout << out.str();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string vol_spec = "constant:0.2";
    std::string out_dir;
    std::string config_path;
    std::size_t steps = 0;
    std::uint64_t seed = 0;
    double s0 = 100.0;
    double rate = 0.0;
    double horizon = 1.0;
    int emit_chain = 0;
    std::size_t chain_points = 201;
    double chain_lo = 0.5;  // moneyness bounds for the generated chain
    double chain_hi = 2.0;
};

volest::VolProcess parse_vol_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto parse_num = [](const std::string& s) {
        std::istringstream in(s);
        double v = 0.0;
        in >> v;
        if (in.fail() || !in.eof()) usage_error("--vol: bad number '" + s + "'");
        return v;
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s) {
            if (c == sep) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        parts.push_back(cur);
        return parts;
    };
    if (head == "constant") {
        if (body.empty()) usage_error("--vol constant:<sigma>");
        return volest::ConstantVol{parse_num(body)};
    }
    if (head == "piecewise") {
        volest::PiecewiseVol pw;
        for (const std::string& seg : split(body, ',')) {
            const auto at = seg.find('@');
            if (at == std::string::npos) usage_error("--vol piecewise:<sigma@end,...>");
            pw.sigma.push_back(parse_num(seg.substr(0, at)));
            pw.end_time.push_back(parse_num(seg.substr(at + 1)));
        }
        return pw;
    }
    if (head == "garch") {
        const std::vector<std::string> parts = split(body, ',');
        if (parts.size() < 4) usage_error("--vol garch:<omega,alpha1,alpha2,beta1[,nu[,mu]]>");
        volest::GarchParams p;
        p.omega = parse_num(parts[0]);
        p.alpha1 = parse_num(parts[1]);
        p.alpha2 = parse_num(parts[2]);
        p.beta1 = parse_num(parts[3]);
        p.nu = parts.size() > 4 ? parse_num(parts[4]) : 8.0;
        p.mu = parts.size() > 5 ? parse_num(parts[5]) : 0.0;
        return volest::GarchVol{p};
    }
    usage_error("--vol must be constant:..., piecewise:... or garch:...");
}

int run_simulate(const SimulateArgs& args, const ConfigRegistry& registry) {
    if (args.out_dir.empty()) usage_error("--out is required");
    if (args.steps == 0) usage_error("--steps must be positive");
    if (!(args.s0 > 0.0)) usage_error("--s0 must be positive");
    if (!(args.horizon > 0.0)) usage_error("--horizon must be positive");
    const volest::VolProcess vol = parse_vol_spec(args.vol_spec);

    volest::SimConfig config;
    config.s0 = args.s0;
    config.rate = args.rate;
    config.horizon = args.horizon;
    config.n_steps = args.steps;
    config.seed = args.seed;
    const volest::SimPath path = volest::simulate_path(config, vol);

    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec) throw DataError("cannot create directory " + args.out_dir);

    // Fabricated sequential calendar labels; dates are labels only.
    std::ostringstream csv;
    csv << "date,close,inst_vol\n";
    volest::Date d{2000, 1, 1};
    for (std::size_t i = 0; i < path.prices.size(); ++i) {
        csv << volest::to_iso_string(d) << ',' << format_full(path.prices[i]) << ',';
        if (i > 0) csv << format_full(path.inst_vol[i - 1]);
        csv << '\n';
        d = volest::next_calendar_day(d);
    }
    const std::filesystem::path dir(args.out_dir);
    volest::write_file((dir / "path.csv").string(), csv.str());

    const double payoff = volest::discrete_variance_payoff(path);
    const bool closed_form = !std::holds_alternative<volest::GarchVol>(vol);
    const double integrated = closed_form ? volest::integrated_variance(vol, args.horizon)
                                          : volest::integrated_variance(path);
    std::cout << "metric,value\n";
    std::cout << "discrete_variance_payoff," << volest::format_g6(payoff) << "\n";
    std::cout << "integrated_variance," << volest::format_g6(integrated) << "\n";
    std::cout << "log_contract_residual,"
              << volest::format_g6(volest::log_contract_identity_check(path.prices)) << "\n";

    if (args.emit_chain != 0) {
        if (args.chain_points < 3 || !(args.chain_lo > 0.0) || !(args.chain_lo < args.chain_hi)) {
            usage_error("--chain-points/--chain-lo/--chain-hi invalid");
        }
        const double sigma = std::sqrt(integrated);
        std::vector<double> strikes(args.chain_points);
        const double log_lo = std::log(args.chain_lo * args.s0);
        const double log_hi = std::log(args.chain_hi * args.s0);
        for (std::size_t i = 0; i < strikes.size(); ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(strikes.size() - 1);
            strikes[i] = std::exp(log_lo + t * (log_hi - log_lo));
        }
        const volest::OptionChain chain =
            volest::generate_bs_chain(args.s0, args.rate, args.horizon, sigma, strikes);
        std::ostringstream chain_csv;
        chain_csv << "strike,call_mid,put_mid\n";
        for (const volest::OptionQuote& q : chain.quotes()) {
            chain_csv << format_full(q.strike) << ',' << format_full(*q.call_mid) << ','
                      << format_full(*q.put_mid) << '\n';
        }
        volest::write_file((dir / "chain.csv").string(), chain_csv.str());
    }

    volest::write_file((dir / "run_config.txt").string(), registry.render());
    std::cerr << "wrote path of " << path.prices.size() << " prices to " << args.out_dir << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate / report
// ---------------------------------------------------------------------------

struct PanelArgs {
    std::string panel_path;
    std::string out_dir;
    std::string config_path;
    std::size_t gof_min_obs = 30;
};

int run_evaluate(const PanelArgs& args, const ConfigRegistry& registry, bool full_report) {
    if (args.panel_path.empty()) usage_error("--panel is required");
    if (args.out_dir.empty()) usage_error("--out is required");
    const std::vector<volest::PanelRow> panel = volest::load_panel_csv(args.panel_path);
    const volest::EvalReport eval = volest::evaluate_panel(panel, args.gof_min_obs);
    if (full_report) {
        volest::emit_report(panel, eval, args.out_dir);
    } else {
        volest::emit_eval_report(panel, eval, args.out_dir);
    }
    volest::write_file((std::filesystem::path(args.out_dir) / "run_config.txt").string(),
                       registry.render());
    std::cerr << "scored " << panel.size() << " panel rows into " << args.out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"volatility estimation, implied-variance, and evaluation toolkit"};
    app.require_subcommand(1);

    // --- estimate ---
    EstimateArgs est;
    ConfigRegistry est_registry;
    CLI::App* cmd_est = app.add_subcommand(
        "estimate", "run the full estimator panel and evaluation on a return series");
    est_registry.bind_string("returns", cmd_est->add_option("--returns", est.returns_path,
                                                            "returns CSV (date,return)"),
                             &est.returns_path);
    est_registry.bind_string(
        "prices", cmd_est->add_option("--prices", est.prices_path, "prices CSV (date,close)"),
        &est.prices_path);
    est_registry.bind_string("vix",
                             cmd_est->add_option("--vix", est.vix_path, "VIX CSV (date,close)"),
                             &est.vix_path);
    est_registry.bind_string("out", cmd_est->add_option("--out", est.out_dir, "output directory"),
                             &est.out_dir);
    est_registry.bind_string(
        "return_kind",
        cmd_est->add_option("--return-kind", est.return_kind, "log|simple (for --prices)"),
        &est.return_kind);
    est_registry.bind_number("first_anchor",
                             cmd_est->add_option("--first-anchor", est.first_anchor),
                             &est.first_anchor);
    est_registry.bind_number("step", cmd_est->add_option("--step", est.step), &est.step);
    est_registry.bind_number("realized_len", cmd_est->add_option("--realized-len", est.realized_len),
                             &est.realized_len);
    est_registry.bind_number("rolling_window",
                             cmd_est->add_option("--rolling-window", est.rolling_window),
                             &est.rolling_window);
    est_registry.bind_number("hsv_rolling", cmd_est->add_option("--hsv-rolling", est.hsv_rolling),
                             &est.hsv_rolling);
    est_registry.bind_number("hsv_increasing",
                             cmd_est->add_option("--hsv-increasing", est.hsv_increasing),
                             &est.hsv_increasing);
    est_registry.bind_number("garch_rolling",
                             cmd_est->add_option("--garch-rolling", est.garch_rolling),
                             &est.garch_rolling);
    est_registry.bind_number("garch_increasing",
                             cmd_est->add_option("--garch-increasing", est.garch_increasing),
                             &est.garch_increasing);
    est_registry.bind_string(
        "garch_dist", cmd_est->add_option("--garch-dist", est.garch_dist, "t|gaussian"),
        &est.garch_dist);
    est_registry.bind_number("garch_restarts",
                             cmd_est->add_option("--garch-restarts", est.garch_restarts),
                             &est.garch_restarts);
    est_registry.bind_number("garch_min_window",
                             cmd_est->add_option("--garch-min-window", est.garch_min_window),
                             &est.garch_min_window);
    est_registry.bind_number("gof_min_obs", cmd_est->add_option("--gof-min-obs", est.gof_min_obs),
                             &est.gof_min_obs);
    est_registry.bind_number("annualization",
                             cmd_est->add_option("--annualization", est.annualization),
                             &est.annualization);
    est_registry.bind_number("seed", cmd_est->add_option("--seed", est.seed), &est.seed);
    est_registry.bind_number("threads", cmd_est->add_option("--threads", est.threads),
                             &est.threads);
    std::string est_rng_stream = volest::kRngStreamId;
    est_registry.bind_string("rng_stream", nullptr, &est_rng_stream);
    cmd_est->add_option("--config", est.config_path, "key = value config file");

    // --- implied ---
    ImpliedArgs imp;
    CLI::App* cmd_imp = app.add_subcommand(
        "implied", "model-free and corridor implied variance from an option chain");
    cmd_imp->add_option("--chain", imp.chain_path, "chain CSV (strike,call_mid,put_mid)");
    cmd_imp->add_option("--spot", imp.spot, "spot price");
    cmd_imp->add_option("--rate", imp.rate, "continuously compounded rate");
    cmd_imp->add_option("--maturity", imp.maturity, "maturity in years");
    CLI::Option* opt_q =
        cmd_imp->add_option("--corridor-q", imp.corridor_q, "corridor tail quantile (0, 0.5)");
    CLI::Option* opt_bounds =
        cmd_imp->add_option("--bounds", imp.bounds, "absolute corridor bounds L U")->expected(2);

    // --- simulate ---
    SimulateArgs sim;
    ConfigRegistry sim_registry;
    CLI::App* cmd_sim =
        app.add_subcommand("simulate", "simulate a price path under a volatility process");
    sim_registry.bind_string(
        "vol",
        cmd_sim->add_option("--vol", sim.vol_spec,
                            "constant:s | piecewise:s@t,... | garch:om,a1,a2,b1[,nu[,mu]]"),
        &sim.vol_spec);
    sim_registry.bind_number("steps", cmd_sim->add_option("--steps", sim.steps), &sim.steps);
    sim_registry.bind_number("seed", cmd_sim->add_option("--seed", sim.seed), &sim.seed);
    sim_registry.bind_number("s0", cmd_sim->add_option("--s0", sim.s0), &sim.s0);
    sim_registry.bind_number("rate", cmd_sim->add_option("--rate", sim.rate), &sim.rate);
    sim_registry.bind_number("horizon", cmd_sim->add_option("--horizon", sim.horizon),
                             &sim.horizon);
    sim_registry.bind_string("out", cmd_sim->add_option("--out", sim.out_dir, "output directory"),
                             &sim.out_dir);
    sim_registry.bind_number("chain", cmd_sim->add_option("--chain", sim.emit_chain,
                                                          "1 = also emit a flat-vol chain"),
                             &sim.emit_chain);
    sim_registry.bind_number("chain_points", cmd_sim->add_option("--chain-points", sim.chain_points),
                             &sim.chain_points);
    sim_registry.bind_number("chain_lo", cmd_sim->add_option("--chain-lo", sim.chain_lo),
                             &sim.chain_lo);
    sim_registry.bind_number("chain_hi", cmd_sim->add_option("--chain-hi", sim.chain_hi),
                             &sim.chain_hi);
    // Pins the generator stream; recorded so stored outputs stay auditable.
    std::string rng_stream = volest::kRngStreamId;
    sim_registry.bind_string("rng_stream", nullptr, &rng_stream);
    cmd_sim->add_option("--config", sim.config_path, "key = value config file");

    // --- evaluate / report ---
    PanelArgs eval_args;
    ConfigRegistry eval_registry;
    CLI::App* cmd_eval =
        app.add_subcommand("evaluate", "re-score an existing panel.csv (tables only)");
    eval_registry.bind_string("panel",
                              cmd_eval->add_option("--panel", eval_args.panel_path, "panel.csv"),
                              &eval_args.panel_path);
    eval_registry.bind_string("out", cmd_eval->add_option("--out", eval_args.out_dir),
                              &eval_args.out_dir);
    eval_registry.bind_number("gof_min_obs",
                              cmd_eval->add_option("--gof-min-obs", eval_args.gof_min_obs),
                              &eval_args.gof_min_obs);
    cmd_eval->add_option("--config", eval_args.config_path, "key = value config file");

    PanelArgs report_args;
    ConfigRegistry report_registry;
    CLI::App* cmd_report =
        app.add_subcommand("report", "re-emit every report file from a stored panel.csv");
    report_registry.bind_string(
        "panel", cmd_report->add_option("--panel", report_args.panel_path, "panel.csv"),
        &report_args.panel_path);
    report_registry.bind_string("out", cmd_report->add_option("--out", report_args.out_dir),
                                &report_args.out_dir);
    report_registry.bind_number("gof_min_obs",
                                cmd_report->add_option("--gof-min-obs", report_args.gof_min_obs),
                                &report_args.gof_min_obs);
    cmd_report->add_option("--config", report_args.config_path, "key = value config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (cmd_est->parsed()) {
            if (!est.config_path.empty()) est_registry.merge_file(est.config_path);
            return run_estimate(est, est_registry);
        }
        if (cmd_imp->parsed()) {
            return run_implied(imp, opt_bounds->count() > 0, opt_q->count() > 0);
        }
        if (cmd_sim->parsed()) {
            if (!sim.config_path.empty()) sim_registry.merge_file(sim.config_path);
            return run_simulate(sim, sim_registry);
        }
        if (cmd_eval->parsed()) {
            if (!eval_args.config_path.empty()) eval_registry.merge_file(eval_args.config_path);
            return run_evaluate(eval_args, eval_registry, /*full_report=*/false);
        }
        if (cmd_report->parsed()) {
            if (!report_args.config_path.empty()) {
                report_registry.merge_file(report_args.config_path);
            }
            return run_evaluate(report_args, report_registry, /*full_report=*/true);
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const InvalidInput& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
