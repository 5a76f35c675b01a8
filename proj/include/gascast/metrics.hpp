#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gascast/calendar.hpp"

namespace gascast {

double mae(std::span<const double> actual, std::span<const double> predicted);
double mape(std::span<const double> actual, std::span<const double> predicted);  // percent
double rmse(std::span<const double> actual, std::span<const double> predicted);

// MAE/RMSE of a residual vector, in (0, 1]. Equals gaussian_mae_rmse_ratio
// for zero-mean Gaussian residuals; lower values indicate fat tails.
double mae_rmse_ratio(std::span<const double> residuals);
double gaussian_mae_rmse_ratio();  // sqrt(2/pi) ~ 0.798

struct MonthlyStats {
    int month = 0;  // 1-12
    std::size_t count = 0;
    double mae = 0.0;
    double mape = 0.0;  // percent
};

// Calendar-month breakdown pooled across years; months without data are
// absent from the result.
std::vector<MonthlyStats> monthly_breakdown(const std::vector<CivilDate>& dates,
                                            std::span<const double> actual,
                                            std::span<const double> predicted);

// Biased-normalized autocorrelation, acf[0] == 1.
std::vector<double> autocorrelation(std::span<const double> series, std::size_t max_lag);

struct PeriodogramBin {
    double period = 0.0;  // n/k sample intervals
    double power = 0.0;
};

// Discrete Fourier magnitude squared of the mean-removed series, scaled so
// the total reported power equals the (biased) series variance.
std::vector<PeriodogramBin> periodogram(std::span<const double> series);

double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace gascast
