#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "gascast/calendar.hpp"
#include "gascast/dataset.hpp"

namespace gascast {

// Seeded synthetic daily series: a cosine annual temperature cycle with
// AR(1) weather noise, demand as a weekly base profile (damped on
// holidays) plus a linear HDD response and Gaussian noise, and a forecast
// temperature column equal to the truth plus independent Gaussian error.
struct GeneratorConfig {
    CivilDate start{2007, 1, 1};
    CivilDate end{2017, 12, 31};

    double alpha = 10.5;  // MSCM per degree of HDD

    // Monday..Sunday demand base, MSCM
    std::array<double, 7> base_profile{30.0, 30.5, 30.5, 30.0, 29.5, 24.0, 22.0};
    double holiday_multiplier = 0.82;

    double temp_mean = 12.0;
    // T(t) = temp_mean + temp_amplitude * cos(2*pi*yearday/365.25) + AR(1);
    // a negative amplitude puts the warm peak mid-year
    double temp_amplitude = -8.5;
    double temp_ar_coeff = 0.7;
    double temp_ar_std = 1.1;

    double sigma_eps = 0.25;  // degC, forecast error std
    double sigma0 = 1.2;      // MSCM, demand noise std

    std::uint64_t seed = 1;

    void validate() const;  // throws InvalidConfig
};

// Deterministic demand component: weekly base with the holiday damping,
// before the HDD response and noise.
double deterministic_base(const GeneratorConfig& cfg, const CivilDate& t,
                          const HolidayCalendar& cal);

// Seasonal temperature before AR(1) noise.
double seasonal_temperature(const GeneratorConfig& cfg, const CivilDate& t);

Dataset generate(const GeneratorConfig& cfg, const HolidayCalendar& cal);

// Plain-text key=value config file, '#' for comments; unknown keys are
// errors. Keys: start, end, alpha, base_profile (7 comma-separated MSCM
// values Mon..Sun), holiday_multiplier, temp_mean, temp_amplitude,
// temp_ar_coeff, temp_ar_std, sigma_eps, sigma0, seed.
GeneratorConfig load_generator_config(const std::string& path);
void write_generator_config(const std::string& path, const GeneratorConfig& cfg);

}  // namespace gascast
