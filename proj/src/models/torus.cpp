#include "gascast/models/torus.hpp"

#include <cmath>
#include <vector>

#include "gascast/errors.hpp"
#include "gascast/features.hpp"
#include "gascast/models/serialize_util.hpp"

namespace gascast {

namespace {
constexpr double kPsi = 2.0 * 3.14159265358979323846 / 365.25;  // yearly frequency
constexpr double kOmega = 2.0 * 3.14159265358979323846 / 7.0;   // weekly frequency

// cos(0..N), sin(1..N) at frequency w*t: 1 + 2N values
void harmonics(double wt, int n, std::vector<double>& out) {
    out.clear();
    for (int j = 0; j <= n; ++j) out.push_back(std::cos(j * wt));
    for (int j = 1; j <= n; ++j) out.push_back(std::sin(j * wt));
}
}  // namespace

int torus_basis_size(int n_daily, int n_weekly) {
    return (1 + 2 * n_daily) * (1 + 2 * n_weekly);
}

Eigen::RowVectorXd TorusModel::regressors(const Dataset& data, TempSource source,
                                          const CivilDate& t, const HolidayCalendar& cal) const {
    const DailyRecord* rec = data.find(t);
    const DailyRecord* prev = data.find(add_days(t, -1));
    if (rec == nullptr || prev == nullptr) {
        throw Error("torus: missing record at " + to_iso(t) + " or the day before");
    }
    const double day = static_cast<double>(days_from_civil(t) - origin_day_);

    std::vector<double> daily;
    std::vector<double> weekly;
    harmonics(kPsi * day, n_daily_, daily);
    harmonics(kOmega * day, n_weekly_, weekly);

    Eigen::RowVectorXd row(2 + torus_basis_size(n_daily_, n_weekly_) + 3 + 2);
    Eigen::Index c = 0;
    row(c++) = 1.0;  // trend level
    row(c++) = day;  // trend slope
    for (double dv : daily) {
        for (double wv : weekly) row(c++) = dv * wv;
    }
    row(c++) = cal.is_holiday(t) ? 1.0 : 0.0;
    row(c++) = is_day_after_holiday(t, cal) ? 1.0 : 0.0;
    row(c++) = is_bridge_holiday(t, cal) ? 1.0 : 0.0;
    const double h = hdd(temperature(*rec, source));
    const double h1 = hdd(temperature(*prev, source));
    row(c++) = h;
    row(c++) = h - h1;
    return row;
}

void TorusModel::fit(const Dataset& data, const DateRange& train, TempSource source, int n_daily,
                     int n_weekly, const HolidayCalendar& cal) {
    if (n_daily < 0 || n_weekly < 0) throw Error("torus: harmonic counts must be >= 0");
    n_daily_ = n_daily;
    n_weekly_ = n_weekly;
    origin_day_ = days_from_civil(train.first);

    std::vector<CivilDate> dates;
    for (std::int64_t z = days_from_civil(train.first); z <= days_from_civil(train.last); ++z) {
        const CivilDate t = civil_from_days(z);
        const DailyRecord* rec = data.find(t);
        if (rec == nullptr || data.find(add_days(t, -1)) == nullptr) continue;
        if (!(rec->rgd > 0.0)) {
            throw NonPositiveDemand("torus: demand must be positive for the log transform (" +
                                    to_iso(t) + ")");
        }
        dates.push_back(t);
    }
    if (dates.empty()) throw EmptyTrainingSet("torus: no usable training day");

    const auto n = static_cast<Eigen::Index>(dates.size());
    const Eigen::Index p = 2 + torus_basis_size(n_daily_, n_weekly_) + 3 + 2;
    Eigen::MatrixXd A(n, p);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const CivilDate& t = dates[static_cast<std::size_t>(i)];
        A.row(i) = regressors(data, source, t, cal);
        b(i) = std::log(data.find(t)->rgd);
    }

    // The tensor basis contains a constant column that duplicates the
    // trend level; the minimum-norm least-squares solution keeps the fit
    // deterministic despite the collinearity.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    coef_ = cod.solve(b);
    rss_ = (A * coef_ - b).squaredNorm();
    n_rows_ = n;
}

double TorusModel::long_term(const Dataset& data, TempSource source, const CivilDate& t,
                             const HolidayCalendar& cal) const {
    if (!fitted()) throw Error("torus: predict before fit");
    return std::exp(regressors(data, source, t, cal).dot(coef_));
}

double TorusModel::predict(const Dataset& data, TempSource source, const CivilDate& t,
                           double rgd_prev, const HolidayCalendar& cal) const {
    if (!(rgd_prev > 0.0)) throw NonPositiveDemand("torus: previous-day demand must be positive");
    const double lt = long_term(data, source, t, cal);
    const double lt_prev = long_term(data, source, add_days(t, -1), cal);
    return lt * rgd_prev / lt_prev;
}

void TorusModel::save(std::ostream& out) const {
    out << "gascast-model 1\nkind torus\n";
    detail::write_int(out, "n_daily", n_daily_);
    detail::write_int(out, "n_weekly", n_weekly_);
    detail::write_int(out, "origin_day", origin_day_);
    detail::write_scalar(out, "rss", rss_);
    detail::write_int(out, "n_rows", n_rows_);
    detail::write_vector(out, "coef", coef_);
}

TorusModel TorusModel::load(std::istream& in) {
    detail::expect_header(in, "torus");
    TorusModel m;
    m.n_daily_ = static_cast<int>(detail::read_int(in, "n_daily"));
    m.n_weekly_ = static_cast<int>(detail::read_int(in, "n_weekly"));
    m.origin_day_ = detail::read_int(in, "origin_day");
    m.rss_ = detail::read_scalar(in, "rss");
    m.n_rows_ = detail::read_int(in, "n_rows");
    m.coef_ = detail::read_vector(in, "coef");
    return m;
}

}  // namespace gascast
