// Python bindings for the main volatility-estimation operations.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "volest/black_scholes.hpp"
#include "volest/diagnostics.hpp"
#include "volest/evaluate.hpp"
#include "volest/garch.hpp"
#include "volest/historical.hpp"
#include "volest/option_chain.hpp"
#include "volest/pipeline.hpp"
#include "volest/schedule.hpp"
#include "volest/series.hpp"
#include "volest/simulate.hpp"
#include "volest/special.hpp"

namespace py = pybind11;

namespace {

volest::OptionKind kind_from_string(const std::string& kind) {
    if (kind == "call") return volest::OptionKind::call;
    if (kind == "put") return volest::OptionKind::put;
    throw volest::InvalidInput("kind must be 'call' or 'put'");
}

volest::WindowMode mode_from_string(const std::string& mode) {
    if (mode == "rolling") return volest::WindowMode::rolling;
    if (mode == "increasing") return volest::WindowMode::increasing;
    throw volest::InvalidInput("mode must be 'rolling' or 'increasing'");
}

volest::InnovationDist dist_from_string(const std::string& dist) {
    if (dist == "t" || dist == "student_t") return volest::InnovationDist::student_t;
    if (dist == "gaussian" || dist == "normal") return volest::InnovationDist::gaussian;
    throw volest::InvalidInput("dist must be 't' or 'gaussian'");
}

volest::ReturnSeries series_from_values(const std::vector<double>& values) {
    // Fabricated sequential dates; index-based windows never look at them.
    volest::ReturnSeries s;
    s.values = values;
    volest::Date d{2000, 1, 1};
    s.dates.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.dates.push_back(d);
        d = volest::next_calendar_day(d);
    }
    return s;
}

volest::Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw volest::InvalidInput("design must be non-empty");
    volest::Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size()) {
            throw volest::InvalidInput("design rows must have equal length");
        }
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_volest, m) {
    m.doc() = "volatility estimation toolkit: historical, GARCH, and implied estimators "
              "with unbiasedness and goodness-of-fit evaluation";

    py::register_exception<volest::InvalidInput>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<volest::DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<volest::NumericError>(m, "NumericError", PyExc_RuntimeError);

    // --- special functions ---
    m.def("norm_cdf", &volest::norm_cdf, py::arg("x"));
    m.def("norm_ppf", &volest::norm_ppf, py::arg("p"));
    m.def("chi2_sf", &volest::chi2_sf, py::arg("x"), py::arg("k"));
    m.def("f_sf", &volest::f_sf, py::arg("x"), py::arg("d1"), py::arg("d2"));
    m.def("student_t_logpdf", &volest::student_t_logpdf, py::arg("x"), py::arg("nu"));

    // --- regression and pre-tests ---
    py::class_<volest::OlsResult>(m, "OlsResult")
        .def_readonly("coefficients", &volest::OlsResult::coefficients)
        .def_readonly("std_errors", &volest::OlsResult::std_errors)
        .def_readonly("t_stats", &volest::OlsResult::t_stats)
        .def_readonly("p_values", &volest::OlsResult::p_values)
        .def_readonly("f_stat", &volest::OlsResult::f_stat)
        .def_readonly("f_p_value", &volest::OlsResult::f_p_value)
        .def_readonly("r_squared", &volest::OlsResult::r_squared)
        .def_readonly("adj_r_squared", &volest::OlsResult::adj_r_squared)
        .def_readonly("durbin_watson", &volest::OlsResult::durbin_watson)
        .def_readonly("residuals", &volest::OlsResult::residuals)
        .def_readonly("n_obs", &volest::OlsResult::n_obs)
        .def_readonly("degenerate", &volest::OlsResult::degenerate);
    m.def(
        "ols_fit",
        [](const std::vector<std::vector<double>>& design, const std::vector<double>& y) {
            return volest::ols_fit(matrix_from_rows(design), y);
        },
        py::arg("design"), py::arg("response"),
        "least squares on a row-major design (include the intercept column yourself)");

    py::class_<volest::TestResult>(m, "TestResult")
        .def_readonly("statistic", &volest::TestResult::statistic)
        .def_readonly("p_value", &volest::TestResult::p_value)
        .def_readonly("aux_statistic", &volest::TestResult::aux_statistic)
        .def_readonly("aux_p_value", &volest::TestResult::aux_p_value);
    m.def("arch_lm_test", &volest::arch_lm_test, py::arg("residuals"), py::arg("q") = 1);
    m.def(
        "adf_test",
        [](const std::vector<double>& series, std::size_t lags) {
            return volest::adf_test(series, lags);
        },
        py::arg("series"), py::arg("lags") = 1);

    // --- schedule and historical estimators ---
    py::class_<volest::IndexRange>(m, "IndexRange")
        .def_readonly("begin", &volest::IndexRange::begin)
        .def_readonly("end", &volest::IndexRange::end)
        .def_property_readonly("first_day", &volest::IndexRange::first_day)
        .def_property_readonly("last_day", &volest::IndexRange::last_day);
    py::class_<volest::SchedulePoint>(m, "SchedulePoint")
        .def_readonly("index", &volest::SchedulePoint::index)
        .def_readonly("anchor_day", &volest::SchedulePoint::anchor_day)
        .def_readonly("estimation_window", &volest::SchedulePoint::estimation_window)
        .def_readonly("realized_window", &volest::SchedulePoint::realized_window);
    m.def(
        "build_schedule",
        [](std::size_t series_len, std::size_t first_anchor, std::size_t step,
           const std::string& mode, std::size_t rolling_window, std::size_t realized_len) {
            return volest::build_schedule(series_len, first_anchor, step, mode_from_string(mode),
                                          rolling_window, realized_len);
        },
        py::arg("series_len"), py::arg("first_anchor") = 253, py::arg("step") = 20,
        py::arg("mode") = "rolling", py::arg("rolling_window") = 252, py::arg("realized_len") = 21);
    m.def(
        "annualized_sample_vol",
        [](const std::vector<double>& window, int days) {
            return volest::annualized_sample_vol(window, {days});
        },
        py::arg("window"), py::arg("trading_days_per_year") = 252);
    m.def(
        "realized_vol",
        [](const volest::SchedulePoint& point, const std::vector<double>& returns, int days) {
            return volest::realized_vol(point, series_from_values(returns), {days});
        },
        py::arg("point"), py::arg("returns"), py::arg("trading_days_per_year") = 252);
    m.def(
        "run_historical",
        [](const std::vector<double>& returns, const std::vector<volest::SchedulePoint>& schedule,
           const std::string& mode, std::size_t rolling_window, int days) {
            volest::HistEstimatorConfig config;
            config.mode = mode_from_string(mode);
            config.rolling_window = rolling_window;
            config.annualization = {days};
            return volest::run_historical(series_from_values(returns), schedule, config);
        },
        py::arg("returns"), py::arg("schedule"), py::arg("mode") = "rolling",
        py::arg("rolling_window") = 252, py::arg("trading_days_per_year") = 252);
    m.def(
        "compute_returns",
        [](const std::vector<double>& prices, const std::string& kind) {
            const auto series = volest::compute_returns(
                series_from_values(std::vector<double>(prices.size(), 0.0)).dates, prices,
                kind == "simple" ? volest::ReturnKind::simple : volest::ReturnKind::log);
            return series.values;
        },
        py::arg("prices"), py::arg("kind") = "log");

    // --- GARCH ---
    py::class_<volest::GarchParams>(m, "GarchParams")
        .def(py::init([](double mu, double omega, double alpha1, double alpha2, double beta1,
                         double nu) {
                 volest::GarchParams p{mu, omega, alpha1, alpha2, beta1, nu};
                 return p;
             }),
             py::arg("mu") = 0.0, py::arg("omega") = 1e-6, py::arg("alpha1") = 0.05,
             py::arg("alpha2") = 0.0, py::arg("beta1") = 0.90, py::arg("nu") = 8.0)
        .def_readwrite("mu", &volest::GarchParams::mu)
        .def_readwrite("omega", &volest::GarchParams::omega)
        .def_readwrite("alpha1", &volest::GarchParams::alpha1)
        .def_readwrite("alpha2", &volest::GarchParams::alpha2)
        .def_readwrite("beta1", &volest::GarchParams::beta1)
        .def_readwrite("nu", &volest::GarchParams::nu)
        .def("persistence", &volest::GarchParams::persistence)
        .def("unconditional_variance", &volest::GarchParams::unconditional_variance);
    py::class_<volest::GarchState>(m, "GarchState")
        .def(py::init([](double last_variance, double eps_sq_1, double eps_sq_2) {
                 volest::GarchState s;
                 s.last_variance = last_variance;
                 s.last_two_sq_innovations = {eps_sq_1, eps_sq_2};
                 return s;
             }),
             py::arg("last_variance"), py::arg("eps_sq_1"), py::arg("eps_sq_2"))
        .def_readonly("last_variance", &volest::GarchState::last_variance)
        .def_readonly("last_two_sq_innovations", &volest::GarchState::last_two_sq_innovations);
    m.def(
        "garch_filter",
        [](const volest::GarchParams& params, const std::vector<double>& returns) {
            auto result = volest::garch_filter(params, returns);
            return py::make_tuple(result.variances, result.state);
        },
        py::arg("params"), py::arg("returns"));
    m.def(
        "garch_loglik",
        [](const volest::GarchParams& params, const std::vector<double>& returns,
           const std::string& dist) {
            return volest::garch_loglik(params, returns, dist_from_string(dist));
        },
        py::arg("params"), py::arg("returns"), py::arg("dist") = "t");
    m.def(
        "garch_fit",
        [](const std::vector<double>& returns, const std::string& dist, std::size_t restarts,
           std::uint64_t seed, std::size_t min_obs) {
            volest::GarchFitOptions options;
            options.dist = dist_from_string(dist);
            options.restarts = restarts;
            options.seed = seed;
            options.min_obs = min_obs;
            const auto fit = volest::garch_fit(returns, options);
            py::dict report;
            report["converged"] = fit.report.converged;
            report["loglik"] = fit.report.loglik;
            report["iterations"] = fit.report.iterations;
            return py::make_tuple(fit.params, report);
        },
        py::arg("returns"), py::arg("dist") = "t", py::arg("restarts") = 3, py::arg("seed") = 0,
        py::arg("min_obs") = 50);
    m.def(
        "garch_std_errors",
        [](const volest::GarchParams& params, const std::vector<double>& returns,
           const std::string& dist) {
            return volest::garch_std_errors(params, returns, dist_from_string(dist));
        },
        py::arg("params"), py::arg("returns"), py::arg("dist") = "t");
    m.def(
        "garch_forecast_annualized",
        [](const volest::GarchParams& params, const volest::GarchState& state, int days) {
            return volest::garch_forecast_annualized(params, state, {days});
        },
        py::arg("params"), py::arg("state"), py::arg("trading_days_per_year") = 252);
    m.def("cap_forecast", &volest::cap_forecast, py::arg("forecast"), py::arg("prev_realized"));

    // --- Black-Scholes and implied variance ---
    m.def(
        "bs_price",
        [](double spot, double strike, double rate, double maturity, double sigma,
           const std::string& kind) {
            return volest::bs_price(spot, strike, rate, maturity, sigma, kind_from_string(kind));
        },
        py::arg("spot"), py::arg("strike"), py::arg("rate"), py::arg("maturity"), py::arg("sigma"),
        py::arg("kind") = "call");
    m.def("vega", &volest::vega, py::arg("spot"), py::arg("strike"), py::arg("rate"),
          py::arg("maturity"), py::arg("sigma"));
    m.def("max_vega_strike", &volest::max_vega_strike, py::arg("spot"), py::arg("rate"),
          py::arg("sigma"), py::arg("maturity"));
    m.def(
        "implied_vol",
        [](double price, double spot, double strike, double rate, double maturity,
           const std::string& kind) {
            return volest::implied_vol(price, spot, strike, rate, maturity,
                                       kind_from_string(kind));
        },
        py::arg("price"), py::arg("spot"), py::arg("strike"), py::arg("rate"), py::arg("maturity"),
        py::arg("kind") = "call");

    py::class_<volest::OptionChain>(m, "OptionChain")
        .def(py::init([](double spot, double rate, double maturity,
                         const std::vector<double>& strikes,
                         const std::vector<std::optional<double>>& calls,
                         const std::vector<std::optional<double>>& puts) {
                 if (strikes.size() != calls.size() || strikes.size() != puts.size()) {
                     throw volest::InvalidInput("strikes/calls/puts must have equal length");
                 }
                 std::vector<volest::OptionQuote> quotes(strikes.size());
                 for (std::size_t i = 0; i < strikes.size(); ++i) {
                     quotes[i].strike = strikes[i];
                     quotes[i].call_mid = calls[i];
                     quotes[i].put_mid = puts[i];
                 }
                 return volest::OptionChain(spot, rate, maturity, std::move(quotes));
             }),
             py::arg("spot"), py::arg("rate"), py::arg("maturity"), py::arg("strikes"),
             py::arg("calls"), py::arg("puts"))
        .def_property_readonly("spot", &volest::OptionChain::spot)
        .def_property_readonly("rate", &volest::OptionChain::rate)
        .def_property_readonly("maturity", &volest::OptionChain::maturity)
        .def_property_readonly("forward", &volest::OptionChain::forward)
        .def_property_readonly("n_quotes",
                               [](const volest::OptionChain& c) { return c.quotes().size(); });
    m.def("model_free_variance", &volest::model_free_variance, py::arg("chain"));
    m.def("corridor_variance", &volest::corridor_variance, py::arg("chain"), py::arg("lower"),
          py::arg("upper"));
    m.def("corridor_bounds_from_quantiles", &volest::corridor_bounds_from_quantiles,
          py::arg("chain"), py::arg("q"));
    m.def("vix_scale", &volest::vix_scale, py::arg("variance"));
    m.def(
        "generate_bs_chain",
        [](double spot, double rate, double maturity, double sigma,
           const std::vector<double>& strikes) {
            return volest::generate_bs_chain(spot, rate, maturity, sigma, strikes);
        },
        py::arg("spot"), py::arg("rate"), py::arg("maturity"), py::arg("sigma"),
        py::arg("strikes"));

    // --- simulation ---
    py::class_<volest::ConstantVol>(m, "ConstantVol")
        .def(py::init<double>(), py::arg("sigma"))
        .def_readwrite("sigma", &volest::ConstantVol::sigma);
    py::class_<volest::PiecewiseVol>(m, "PiecewiseVol")
        .def(py::init([](const std::vector<double>& sigma, const std::vector<double>& end_time) {
                 return volest::PiecewiseVol{sigma, end_time};
             }),
             py::arg("sigma"), py::arg("end_time"))
        .def_readwrite("sigma", &volest::PiecewiseVol::sigma)
        .def_readwrite("end_time", &volest::PiecewiseVol::end_time);
    py::class_<volest::GarchVol>(m, "GarchVol")
        .def(py::init([](const volest::GarchParams& p) { return volest::GarchVol{p}; }),
             py::arg("params"))
        .def_readwrite("params", &volest::GarchVol::params);
    py::class_<volest::SimPath>(m, "SimPath")
        .def_readonly("prices", &volest::SimPath::prices)
        .def_readonly("inst_vol", &volest::SimPath::inst_vol);
    m.def(
        "simulate_path",
        [](double s0, double rate, double horizon, std::size_t n_steps, std::uint64_t seed,
           const volest::VolProcess& vol) {
            volest::SimConfig config{s0, rate, horizon, n_steps, seed};
            return volest::simulate_path(config, vol);
        },
        py::arg("s0"), py::arg("rate"), py::arg("horizon"), py::arg("n_steps"), py::arg("seed"),
        py::arg("vol"));
    m.def(
        "discrete_variance_payoff",
        [](const std::vector<double>& prices, double horizon) {
            return volest::discrete_variance_payoff(prices, horizon);
        },
        py::arg("prices"), py::arg("horizon"));
    m.def(
        "integrated_variance",
        [](const volest::VolProcess& vol, double horizon) {
            return volest::integrated_variance(vol, horizon);
        },
        py::arg("vol"), py::arg("horizon"));
    m.def(
        "integrated_variance_of_path",
        [](const volest::SimPath& path) { return volest::integrated_variance(path); },
        py::arg("path"));
    m.def(
        "log_contract_identity_check",
        [](const std::vector<double>& prices) {
            return volest::log_contract_identity_check(prices);
        },
        py::arg("prices"));
    m.def("simulate_garch_returns",
          [](const volest::GarchParams& params, std::size_t n, std::uint64_t seed,
             const std::string& dist) {
              return volest::simulate_garch_returns(params, n, seed, dist_from_string(dist));
          },
          py::arg("params"), py::arg("n"), py::arg("seed"), py::arg("dist") = "t");

    // --- evaluation ---
    py::class_<volest::UnbiasednessResult>(m, "UnbiasednessResult")
        .def_readonly("a", &volest::UnbiasednessResult::a)
        .def_readonly("b", &volest::UnbiasednessResult::b)
        .def_readonly("p_a", &volest::UnbiasednessResult::p_a)
        .def_readonly("p_b", &volest::UnbiasednessResult::p_b)
        .def_readonly("f_stat", &volest::UnbiasednessResult::f_stat)
        .def_readonly("p_f", &volest::UnbiasednessResult::p_f)
        .def_readonly("n", &volest::UnbiasednessResult::n)
        .def_readonly("degenerate", &volest::UnbiasednessResult::degenerate);
    m.def("unbiasedness_test", &volest::unbiasedness_test, py::arg("realized"),
          py::arg("estimate"));
    m.def("mse", &volest::mse, py::arg("estimate"), py::arg("realized"));
    py::class_<volest::GofResult>(m, "GofResult")
        .def_readonly("mse", &volest::GofResult::mse)
        .def_readonly("delta_hat_sq", &volest::GofResult::delta_hat_sq)
        .def_readonly("statistic", &volest::GofResult::statistic)
        .def_readonly("p_value", &volest::GofResult::p_value)
        .def_readonly("n", &volest::GofResult::n);
    m.def(
        "gof_test",
        [](const std::vector<double>& estimate, const std::vector<double>& realized,
           const std::string& dispersion, std::size_t min_obs) {
            const auto kind = dispersion == "realized_center"
                                  ? volest::GofDispersion::realized_center
                                  : volest::GofDispersion::estimator_mean;
            return volest::gof_test(estimate, realized, kind, min_obs);
        },
        py::arg("estimate"), py::arg("realized"), py::arg("dispersion") = "estimator_mean",
        py::arg("min_obs") = 30);
    m.def(
        "encompassing_regression",
        [](const std::vector<double>& realized,
           const std::vector<std::pair<std::string, std::vector<double>>>& estimates,
           const std::vector<std::pair<std::size_t, double>>& hypothesis) {
            std::vector<volest::CoefConstraint> constraints;
            constraints.reserve(hypothesis.size());
            for (const auto& [idx, value] : hypothesis) constraints.push_back({idx, value});
            const auto result = volest::encompassing_regression(realized, estimates, constraints);
            py::dict out;
            out["names"] = result.names;
            out["coefficients"] = result.ols.coefficients;
            out["p_values"] = result.ols.p_values;
            out["adj_r_squared"] = result.ols.adj_r_squared;
            out["durbin_watson"] = result.ols.durbin_watson;
            out["joint_f"] = result.joint.statistic;
            out["joint_p"] = result.joint.p_value;
            return out;
        },
        py::arg("realized"), py::arg("estimates"), py::arg("hypothesis"),
        "hypothesis: list of (coefficient index, value); index 0 is the intercept");

#ifdef VOLEST_VERSION
    m.attr("__version__") = VOLEST_VERSION;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
