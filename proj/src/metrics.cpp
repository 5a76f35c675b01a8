#include "gascast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gascast/errors.hpp"

namespace gascast {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> p) {
    if (a.size() != p.size()) {
        throw LengthMismatch("actual has " + std::to_string(a.size()) + " entries, predicted " +
                             std::to_string(p.size()));
    }
    if (a.empty()) throw LengthMismatch("empty series");
}

}  // namespace

double mae(std::span<const double> actual, std::span<const double> predicted) {
    check_lengths(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) s += std::abs(actual[i] - predicted[i]);
    return s / static_cast<double>(actual.size());
}

double mape(std::span<const double> actual, std::span<const double> predicted) {
    check_lengths(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] <= 0.0) {
            throw ZeroTarget("MAPE undefined: non-positive target at index " + std::to_string(i));
        }
        s += std::abs(actual[i] - predicted[i]) / actual[i];
    }
    return 100.0 * s / static_cast<double>(actual.size());
}

double rmse(std::span<const double> actual, std::span<const double> predicted) {
    check_lengths(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double r = actual[i] - predicted[i];
        s += r * r;
    }
    return std::sqrt(s / static_cast<double>(actual.size()));
}

double mae_rmse_ratio(std::span<const double> residuals) {
    if (residuals.empty()) throw LengthMismatch("empty residual vector");
    double sa = 0.0;
    double sq = 0.0;
    for (double r : residuals) {
        sa += std::abs(r);
        sq += r * r;
    }
    const auto n = static_cast<double>(residuals.size());
    const double rms = std::sqrt(sq / n);
    if (rms == 0.0) throw ZeroRmse("all residuals are zero");
    return (sa / n) / rms;
}

double gaussian_mae_rmse_ratio() { return std::sqrt(2.0 / 3.14159265358979323846); }

std::vector<MonthlyStats> monthly_breakdown(const std::vector<CivilDate>& dates,
                                            std::span<const double> actual,
                                            std::span<const double> predicted) {
    check_lengths(actual, predicted);
    if (dates.size() != actual.size()) {
        throw LengthMismatch("dates and residual series differ in length");
    }
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> buckets;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        auto& b = buckets[dates[i].month];
        b.first.push_back(actual[i]);
        b.second.push_back(predicted[i]);
    }
    std::vector<MonthlyStats> out;
    for (const auto& [month, b] : buckets) {
        MonthlyStats s;
        s.month = month;
        s.count = b.first.size();
        s.mae = mae(b.first, b.second);
        s.mape = mape(b.first, b.second);
        out.push_back(s);
    }
    return out;
}

std::vector<double> autocorrelation(std::span<const double> series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n <= max_lag) throw LengthMismatch("series shorter than max_lag");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double denom = 0.0;
    for (double v : series) denom += (v - mean) * (v - mean);
    if (denom == 0.0) throw ConstantSeries("autocorrelation undefined for a constant series");
    std::vector<double> acf(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            s += (series[t] - mean) * (series[t + k] - mean);
        }
        acf[k] = s / denom;  // biased estimator: same denominator for every lag
    }
    return acf;
}

std::vector<PeriodogramBin> periodogram(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) throw LengthMismatch("periodogram needs at least 2 samples");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    const double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<PeriodogramBin> out;
    out.reserve(n / 2);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        double re = 0.0;
        double im = 0.0;
        const double w = two_pi * static_cast<double>(k) / static_cast<double>(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double x = series[t] - mean;
            re += x * std::cos(w * static_cast<double>(t));
            im -= x * std::sin(w * static_cast<double>(t));
        }
        const double mag2 = (re * re + im * im) / (static_cast<double>(n) * static_cast<double>(n));
        // conjugate-symmetric bins count twice, the Nyquist bin once
        const bool nyquist = (n % 2 == 0) && (k == n / 2);
        PeriodogramBin bin;
        bin.period = static_cast<double>(n) / static_cast<double>(k);
        bin.power = nyquist ? mag2 : 2.0 * mag2;
        out.push_back(bin);
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y);
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ConstantSeries("pearson undefined when a series is constant");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace gascast
