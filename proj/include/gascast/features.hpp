#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gascast/calendar.hpp"
#include "gascast/dataset.hpp"

namespace gascast {

// Heating Degree Days: the heating requirement proxy that linearizes the
// demand-temperature relation.
inline double hdd(double temp_c) { return temp_c < 18.0 ? 18.0 - temp_c : 0.0; }

inline constexpr int kFeatureCount = 21;

// Column layout of the design matrix. Demand lags first, then temperature
// and HDD blocks, then weekday dummies (Sunday is the dropped reference
// level) and the three holiday flags.
extern const std::array<const char*, kFeatureCount> kFeatureNames;
extern const std::array<bool, kFeatureCount> kFeatureContinuous;

int feature_index(const std::string& name);  // -1 if unknown

struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
    double at(const std::string& name) const { return values[static_cast<std::size_t>(feature_index(name))]; }
};

// Per-column standardization fitted on training rows. Binary columns are
// passed through unchanged.
struct FeatureScaler {
    std::array<double, kFeatureCount> mean{};
    std::array<double, kFeatureCount> std{};
    std::array<bool, kFeatureCount> scaled{};

    Eigen::RowVectorXd standardize(const FeatureVector& raw) const;
    FeatureVector destandardize(const Eigen::RowVectorXd& row) const;
};

struct FeatureMatrix {
    Eigen::MatrixXd X;  // n x 21, standardized
    Eigen::VectorXd y;  // MSCM, untouched
    std::vector<CivilDate> dates;
    FeatureScaler scaler;
    double y_mean = 0.0;  // target statistics over the rows, for reference
    double y_std = 1.0;

    Eigen::Index rows() const { return X.rows(); }
};

// Assembles the raw covariates of one day. Requires dataset records at t,
// t-1, t-7, sim(t) and sim(t-1); returns nullopt when any is missing so
// the caller can skip the row.
std::optional<FeatureVector> build_row(const Dataset& data, const CivilDate& t,
                                       TempSource source, const HolidayCalendar& cal);

// All feasible rows of the range in chronological order, standardized
// with statistics fitted on those same rows. Throws EmptyMatrix when no
// row is feasible and ZeroVarianceColumn when a continuous column is
// constant.
FeatureMatrix build_matrix(const Dataset& data, const DateRange& range, TempSource source,
                           const HolidayCalendar& cal);

// Debug dump; %.17g everywhere so a write/read round trip is bit-exact.
void write_feature_csv(const std::string& path, const FeatureMatrix& m,
                       bool timestamp_header = false);
struct FeatureCsv {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::vector<CivilDate> dates;
};
FeatureCsv read_feature_csv(const std::string& path);

}  // namespace gascast
