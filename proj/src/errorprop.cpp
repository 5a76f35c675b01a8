#include "gascast/errorprop.hpp"

#include <cmath>

#include "gascast/errors.hpp"
#include "gascast/features.hpp"
#include "gascast/rng.hpp"

namespace gascast {

ErrorPropParams estimate_params(const Dataset& data) {
    if (data.empty()) throw Error("estimate_params: empty dataset");
    if (!data.has_actual_temperature()) {
        throw MissingActualTemperature("estimate_params needs both temperature columns");
    }

    const auto& recs = data.records();
    const auto n = static_cast<double>(recs.size());

    std::size_t cold = 0;
    double mean_h = 0.0;
    double mean_g = 0.0;
    for (const auto& r : recs) {
        const double t = *r.temp_actual;
        if (t < 18.0) ++cold;
        mean_h += hdd(t);
        mean_g += r.rgd;
    }
    if (cold == 0) throw NoColdDays("no day below 18 degC; alpha cannot be estimated");
    mean_h /= n;
    mean_g /= n;

    double shh = 0.0;
    double shg = 0.0;
    double var_eps = 0.0;
    double mean_eps = 0.0;
    for (const auto& r : recs) {
        mean_eps += r.temp_forecast - *r.temp_actual;
    }
    mean_eps /= n;
    for (const auto& r : recs) {
        const double h = hdd(*r.temp_actual) - mean_h;
        shh += h * h;
        shg += h * (r.rgd - mean_g);
        const double e = r.temp_forecast - *r.temp_actual - mean_eps;
        var_eps += e * e;
    }
    if (shh <= 0.0) throw NoColdDays("HDD has no variance; alpha cannot be estimated");

    ErrorPropParams p;
    p.alpha = shg / shh;
    p.p_cold = static_cast<double>(cold) / n;
    p.sigma2_eps = recs.size() > 1 ? var_eps / (n - 1.0) : 0.0;
    return p;
}

double performance_limit(const ErrorPropParams& p) {
    return std::sqrt(p.p_cold * p.alpha * p.alpha * p.sigma2_eps);
}

double predicted_rmse(double sigma2_0, const ErrorPropParams& p) {
    return std::sqrt(sigma2_0 + p.p_cold * p.alpha * p.alpha * p.sigma2_eps);
}

double negligibility_threshold(double sigma2_0, const ErrorPropParams& p) {
    const double den = p.p_cold * p.alpha * p.alpha;
    if (den <= 0.0) throw ZeroDenominator("threshold undefined: p_cold * alpha^2 is zero");
    return sigma2_0 / den;
}

double temperature_error_share(double sigma2_0, double mse_total) {
    if (mse_total <= 0.0) throw ZeroDenominator("temperature share undefined for zero MSE");
    return (mse_total - sigma2_0) / mse_total;
}

std::vector<CurvePoint> rmse_curve(double sigma2_0, const ErrorPropParams& p,
                                   std::span<const double> sigma2_eps_values) {
    if (sigma2_eps_values.empty()) throw Error("rmse_curve: empty range");
    std::vector<CurvePoint> out;
    out.reserve(sigma2_eps_values.size());
    for (double s2 : sigma2_eps_values) {
        ErrorPropParams q = p;
        q.sigma2_eps = s2;
        out.push_back({s2, std::sqrt(s2), predicted_rmse(sigma2_0, q)});
    }
    return out;
}

MonteCarloResult monte_carlo_validate(const GeneratorConfig& cfg, std::size_t n_days,
                                      std::uint64_t seed, const HolidayCalendar& cal) {
    if (n_days == 0) throw Error("monte_carlo_validate: n_days must be > 0");

    MonteCarloResult res;
    res.params.alpha = cfg.alpha;
    res.params.sigma2_eps = cfg.sigma_eps * cfg.sigma_eps;
    res.sigma2_0 = cfg.sigma0 * cfg.sigma0;

    double sq_sum = 0.0;
    std::size_t done = 0;
    std::size_t cold = 0;
    std::uint64_t cycle = 0;
    while (done < n_days) {
        GeneratorConfig c = cfg;
        c.seed = derive_seed(seed, cycle++);
        const Dataset data = generate(c, cal);
        for (const auto& r : data.records()) {
            if (done == n_days) break;
            // forecaster with perfect structural knowledge, forecast temps
            const double forecast =
                deterministic_base(cfg, r.date, cal) + cfg.alpha * hdd(r.temp_forecast);
            const double e = forecast - r.rgd;
            sq_sum += e * e;
            if (*r.temp_actual < 18.0) ++cold;
            ++done;
        }
    }

    res.days = done;
    res.params.p_cold = static_cast<double>(cold) / static_cast<double>(done);
    res.empirical_rmse = std::sqrt(sq_sum / static_cast<double>(done));
    res.predicted = predicted_rmse(res.sigma2_0, res.params);
    res.relative_gap = res.predicted > 0.0
                           ? std::abs(res.empirical_rmse - res.predicted) / res.predicted
                           : res.empirical_rmse;
    return res;
}

}  // namespace gascast
