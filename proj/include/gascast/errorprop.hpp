#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gascast/datagen.hpp"
#include "gascast/dataset.hpp"

namespace gascast {

// Parameters of the temperature-error propagation model: demand responds
// linearly to HDD with sensitivity alpha, temperature forecasts carry a
// zero-mean error of variance sigma2_eps, and cold days (T < 18 degC)
// occur with probability p_cold.
struct ErrorPropParams {
    double alpha = 0.0;       // MSCM per degC
    double p_cold = 0.0;      // P(T < 18 degC)
    double sigma2_eps = 0.0;  // degC^2
};

// Estimates the parameters from a dataset carrying both temperature
// columns: p_cold as the cold-day fraction, alpha as the least-squares
// slope of demand on HDD of the actual temperature, sigma2_eps as the
// sample variance of forecast minus actual. Throws NoColdDays when no day
// is below 18 degC.
ErrorPropParams estimate_params(const Dataset& data);

// Lower bound on the achievable demand-forecast RMSE induced by the
// temperature forecast error: sqrt(p_cold * alpha^2 * sigma2_eps).
double performance_limit(const ErrorPropParams& p);

// RMSE predicted when a forecaster with temperature-free error variance
// sigma2_0 switches to forecast temperatures:
// sqrt(sigma2_0 + p_cold * alpha^2 * sigma2_eps).
double predicted_rmse(double sigma2_0, const ErrorPropParams& p);

// Temperature error variance below which its influence is negligible:
// sigma2_0 / (p_cold * alpha^2).
double negligibility_threshold(double sigma2_0, const ErrorPropParams& p);

// Share of a measured MSE attributable to temperature errors under the
// additive variance identity: (mse_total - sigma2_0) / mse_total.
double temperature_error_share(double sigma2_0, double mse_total);

struct CurvePoint {
    double sigma2_eps = 0.0;
    double temp_rmse = 0.0;  // sqrt(sigma2_eps)
    double gas_rmse = 0.0;
};

// predicted_rmse sampled over a set of temperature error variances
std::vector<CurvePoint> rmse_curve(double sigma2_0, const ErrorPropParams& p,
                                   std::span<const double> sigma2_eps_values);

struct MonteCarloResult {
    std::size_t days = 0;
    ErrorPropParams params;      // alpha/sigma2_eps from the generator, p_cold measured
    double sigma2_0 = 0.0;       // generator demand noise variance
    double empirical_rmse = 0.0;
    double predicted = 0.0;
    double relative_gap = 0.0;   // |empirical - predicted| / predicted
};

// Simulates the idealized forecaster (known base demand and alpha, only
// the forecast temperature available) against synthetic truth and compares
// the measured RMSE with the predicted one. Horizons longer than the
// config window are covered by repeating the window with derived seeds.
MonteCarloResult monte_carlo_validate(const GeneratorConfig& cfg, std::size_t n_days,
                                      std::uint64_t seed, const HolidayCalendar& cal);

}  // namespace gascast
