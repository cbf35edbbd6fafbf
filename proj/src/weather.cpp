#include "thermex/weather.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "thermex/errors.hpp"

namespace thermex {

int day_of_year(double t_seconds) {
    const auto day = static_cast<std::int64_t>(
        std::floor(t_seconds / static_cast<double>(kSecondsPerDay)));
    return static_cast<int>(((day % kDaysPerYear) + kDaysPerYear) %
                            kDaysPerYear) +
           1;
}

double hour_of_day(double t_seconds) {
    const double day_sec =
        std::fmod(t_seconds, static_cast<double>(kSecondsPerDay));
    return (day_sec < 0 ? day_sec + kSecondsPerDay : day_sec) / 3600.0;
}

int day_of_week(double t_seconds) {
    const auto day = static_cast<std::int64_t>(
        std::floor(t_seconds / static_cast<double>(kSecondsPerDay)));
    return static_cast<int>(((day % 7) + 7) % 7);
}

WeatherModel WeatherModel::synthetic(SyntheticWeather params) {
    WeatherModel m;
    m.synthetic_ = true;
    m.params_ = params;
    return m;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

double parse_field(const std::string& raw, std::size_t row,
                   const std::string& column) {
    const char* begin = raw.data();
    const char* end = begin + raw.size();
    while (begin != end && (*begin == ' ' || *begin == '\t'))
        ++begin;
    while (end != begin && (end[-1] == ' ' || end[-1] == '\t' ||
                            end[-1] == '\r'))
        --end;
    double value = 0.0;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value))
        throw RunError("weather csv row " + std::to_string(row) +
                       ": cannot parse column '" + column + "' from '" + raw +
                       "'");
    return value;
}

} // namespace

WeatherModel WeatherModel::from_csv(const std::filesystem::path& path,
                                    const WeatherColumns& columns) {
    std::ifstream in(path);
    if (!in)
        throw RunError("weather csv: cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw RunError("weather csv: " + path.string() + " is empty");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.pop_back();

    const auto header = split_csv_line(line);
    auto find_col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw RunError("weather csv: missing column '" + name + "' in " +
                           path.string());
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t it_time = find_col(columns.time);
    const std::size_t it_tout = find_col(columns.t_out);
    const std::size_t it_solar = find_col(columns.solar);

    WeatherModel m;
    m.synthetic_ = false;
    m.path_ = path;

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r")
            continue;
        const auto fields = split_csv_line(line);
        const std::size_t needed =
            std::max({it_time, it_tout, it_solar}) + 1;
        if (fields.size() < needed)
            throw RunError("weather csv row " + std::to_string(row) +
                           ": expected at least " + std::to_string(needed) +
                           " fields, got " + std::to_string(fields.size()));
        const double t = parse_field(fields[it_time], row, columns.time);
        if (!m.time_s_.empty() && t <= m.time_s_.back())
            throw RunError("weather csv row " + std::to_string(row) +
                           ": timestamps must be strictly increasing");
        m.time_s_.push_back(t);
        m.t_out_c_.push_back(parse_field(fields[it_tout], row, columns.t_out));
        m.solar_wm2_.push_back(
            parse_field(fields[it_solar], row, columns.solar));
    }
    if (m.time_s_.empty())
        throw RunError("weather csv: " + path.string() + " has no data rows");
    return m;
}

WeatherPoint WeatherModel::sample(double t_seconds) const {
    if (!synthetic_) {
        // Zero-order hold; clamp before the first and after the last sample.
        const auto it = std::upper_bound(time_s_.begin(), time_s_.end(),
                                         t_seconds);
        const std::size_t idx =
            it == time_s_.begin()
                ? 0
                : static_cast<std::size_t>(it - time_s_.begin()) - 1;
        return {t_out_c_[idx], solar_wm2_[idx]};
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double doy = day_of_year(t_seconds);
    const double hod = hour_of_day(t_seconds);
    const double annual_phase =
        two_pi * (doy - params_.coldest_day) / kDaysPerYear;

    const double t_out = params_.t_mean -
                         params_.t_annual_amp * std::cos(annual_phase) +
                         params_.t_diurnal_amp *
                             std::sin(two_pi * (hod - 9.0) / 24.0);

    double solar = 0.0;
    if (hod >= 6.0 && hod <= 18.0) {
        const double raw = 0.5 - 0.5 * std::cos(annual_phase); // 0 = coldest
        const double seasonal = 0.2 + 0.8 * raw;
        solar = std::max(0.0, params_.solar_peak * seasonal *
                                  std::sin(std::numbers::pi * (hod - 6.0) /
                                           12.0));
    }
    return {t_out, solar};
}

GainSchedule GainSchedule::standard() {
    GainSchedule g;
    for (int h = 0; h < 24; ++h) {
        double wd = 100.0;
        if (h >= 6 && h <= 8)
            wd = 400.0;
        else if (h >= 9 && h <= 16)
            wd = 150.0;
        else if (h >= 17 && h <= 21)
            wd = 500.0;
        else if (h >= 22)
            wd = 200.0;
        g.weekday_w[static_cast<std::size_t>(h)] = wd;

        double we = 150.0;
        if (h >= 8 && h <= 22)
            we = 350.0;
        g.weekend_w[static_cast<std::size_t>(h)] = we;
    }
    return g;
}

double GainSchedule::sample(double t_seconds) const {
    const bool weekend = day_of_week(t_seconds) >= 5;
    const auto hour = static_cast<std::size_t>(hour_of_day(t_seconds));
    return (weekend ? weekend_w : weekday_w)[std::min<std::size_t>(hour, 23)];
}

void GainSchedule::validate() const {
    for (double v : weekday_w)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ConfigError("gains.weekday_w: values must be >= 0");
    for (double v : weekend_w)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ConfigError("gains.weekend_w: values must be >= 0");
}

} // namespace thermex
