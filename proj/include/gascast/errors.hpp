#pragma once

#include <stdexcept>
#include <string>

namespace gascast {

// Base class for all domain errors raised by the library. The CLI maps
// these to exit code 1; anything else escaping to main is a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// calendar
struct CalendarRangeError : Error { using Error::Error; };

// dataset / csv
struct CsvError : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct MissingActualTemperature : Error { using Error::Error; };

// features
struct EmptyMatrix : Error { using Error::Error; };
struct ZeroVarianceColumn : Error { using Error::Error; };

// models
struct SingularSystem : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct UnsupportedNu : Error { using Error::Error; };
struct EmptyTrainingSet : Error { using Error::Error; };
struct NonFiniteLoss : Error { using Error::Error; };
struct NonPositiveDemand : Error { using Error::Error; };

// tuning
struct DegenerateFold : Error { using Error::Error; };
struct AllGridPointsFailed : Error { using Error::Error; };

// metrics
struct LengthMismatch : Error { using Error::Error; };
struct ZeroTarget : Error { using Error::Error; };
struct ConstantSeries : Error { using Error::Error; };
struct ZeroRmse : Error { using Error::Error; };

// errorprop
struct NoColdDays : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };

// backtest
struct InsufficientHistory : Error { using Error::Error; };

}  // namespace gascast
