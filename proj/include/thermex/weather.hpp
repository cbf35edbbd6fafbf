#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace thermex {

// Simulation calendar: 365-day years (no leap days), day 1 = Jan 1 of year 1,
// which is defined to be a Monday. All times are seconds since that instant.
inline constexpr std::int64_t kSecondsPerHour = 3600;
inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr int kDaysPerYear = 365;
inline constexpr std::int64_t kSecondsPerYear = kSecondsPerDay * kDaysPerYear;

// 1-based day of year in [1, 365].
int day_of_year(double t_seconds);
// Fractional hour of day in [0, 24).
double hour_of_day(double t_seconds);
// 0 = Monday ... 6 = Sunday.
int day_of_week(double t_seconds);

// Two-sinusoid synthetic climate: an annual cosine centered on the coldest
// day plus a diurnal sine peaking mid-afternoon. The defaults put the
// outdoor temperature at ~0 degC with no sun at midnight on Feb 1 (day 32).
struct SyntheticWeather {
    double t_mean = 9.0;       // degC, annual mean
    double t_annual_amp = 7.0; // K
    double t_diurnal_amp = 3.0; // K
    double solar_peak = 600.0; // W/m^2, clear-sky summer noon
    int coldest_day = 32;      // day of year
};

struct WeatherColumns {
    std::string time = "time_s";
    std::string t_out = "t_out_c";
    std::string solar = "solar_wm2";
};

struct WeatherPoint {
    double t_out;
    double solar;
};

// Boundary-condition source: either the synthetic generator or a CSV series
// sampled with zero-order hold.
class WeatherModel {
public:
    static WeatherModel synthetic(SyntheticWeather params = {});
    // CSV with header; timestamps must be strictly increasing. Throws
    // RunError with the offending row number on malformed input.
    static WeatherModel from_csv(const std::filesystem::path& path,
                                 const WeatherColumns& columns = {});

    WeatherPoint sample(double t_seconds) const;

    bool is_synthetic() const { return synthetic_; }
    const SyntheticWeather& synthetic_params() const { return params_; }
    const std::filesystem::path& source_path() const { return path_; }

private:
    WeatherModel() = default;

    bool synthetic_ = true;
    SyntheticWeather params_;
    std::filesystem::path path_;
    std::vector<double> time_s_;
    std::vector<double> t_out_c_;
    std::vector<double> solar_wm2_;
};

// Deterministic occupancy/equipment gains: one hourly profile for weekdays,
// one for weekends, zero-order hold within the hour.
struct GainSchedule {
    std::array<double, 24> weekday_w{};
    std::array<double, 24> weekend_w{};

    static GainSchedule standard();

    double sample(double t_seconds) const;
    void validate() const;
};

} // namespace thermex
