#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "gascast/calendar.hpp"
#include "gascast/dataset.hpp"

namespace gascast {

// tensor-product basis size (1 + 2 Nd)(1 + 2 Nw)
int torus_basis_size(int n_daily, int n_weekly);

// Multiperiodic regression of log demand on an affine trend, a tensor
// product of yearly (period 365.25 d) and weekly (period 7 d) sinusoidal
// bases, the three holiday flags, and the pair HDD(t), HDD(t)-HDD(t-1).
// Short-term forecasts rescale the long-term curve by yesterday's
// observed demand.
class TorusModel {
public:
    void fit(const Dataset& data, const DateRange& train, TempSource source, int n_daily,
             int n_weekly, const HolidayCalendar& cal);

    // exp of the fitted log model at a date; needs temperatures at t, t-1
    double long_term(const Dataset& data, TempSource source, const CivilDate& t,
                     const HolidayCalendar& cal) const;

    // long_term(t) * rgd_prev / long_term(t-1)
    double predict(const Dataset& data, TempSource source, const CivilDate& t, double rgd_prev,
                   const HolidayCalendar& cal) const;

    int n_daily() const { return n_daily_; }
    int n_weekly() const { return n_weekly_; }
    const Eigen::VectorXd& coefficients() const { return coef_; }
    double rss() const { return rss_; }             // on the log scale
    Eigen::Index n_rows() const { return n_rows_; }
    int n_regressors() const { return static_cast<int>(coef_.size()); }
    bool fitted() const { return coef_.size() > 0; }

    // regressor row layout: [1, t] ++ basis ++ [holiday, day_after, bridge]
    // ++ [hdd, hdd - hdd_lag1]; t counts days from the training origin
    Eigen::RowVectorXd regressors(const Dataset& data, TempSource source, const CivilDate& t,
                                  const HolidayCalendar& cal) const;

    void save(std::ostream& out) const;
    static TorusModel load(std::istream& in);

private:
    int n_daily_ = 1;
    int n_weekly_ = 3;
    std::int64_t origin_day_ = 0;  // days_from_civil of the first training date
    Eigen::VectorXd coef_;
    double rss_ = 0.0;
    Eigen::Index n_rows_ = 0;
};

}  // namespace gascast
