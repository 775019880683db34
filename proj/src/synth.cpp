#include "solarcast/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "solarcast/rng.hpp"

namespace solarcast::synth {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

// Sub-seed stream ids, one per generated series.
enum Stream : std::uint64_t { kCloud = 1, kTemp = 2, kHumidity = 3, kWind = 4, kPower = 5 };

double fahrenheit_to_celsius(double f) { return (f - 32.0) * 5.0 / 9.0; }

}  // namespace

void SynthConfig::validate() const {
    if (std::abs(latitude_deg) > 66.0)
        throw std::invalid_argument("synth: |latitude| must be <= 66");
    if (n_hours < 48) throw std::invalid_argument("synth: n_hours must be >= 48");
    if (cloud_persistence < 0.0 || cloud_persistence >= 1.0)
        throw std::invalid_argument("synth: cloud_persistence must be in [0,1)");
    if (cloud_noise_sd < 0.0) throw std::invalid_argument("synth: cloud_noise_sd must be >= 0");
    if (panel_rated_kw <= 0.0) throw std::invalid_argument("synth: panel_rated_kw must be > 0");
    if (noise_sd_kw < 0.0) throw std::invalid_argument("synth: noise_sd_kw must be >= 0");
}

double clear_sky_irradiance(Timestamp when, double latitude_deg) {
    if (std::abs(latitude_deg) > 66.0)
        throw std::invalid_argument("clear_sky_irradiance: |latitude| must be <= 66");
    const CalendarFeatures cf = when.calendar();
    const int doy = when.day_of_year();

    const double declination =
        SolarConstants::axial_tilt_deg * std::sin(2.0 * kPi * (doy - 81) / 365.0) * kDegToRad;
    const double hour_angle = 15.0 * (cf.hour - 12) * kDegToRad;
    const double lat = latitude_deg * kDegToRad;
    const double sin_elevation = std::sin(lat) * std::sin(declination) +
                                 std::cos(lat) * std::cos(declination) * std::cos(hour_angle);
    return std::max(0.0, SolarConstants::clear_sky_peak_wm2 * sin_elevation);
}

std::vector<double> simulate_cloud_cover(std::int64_t n_hours, double persistence, double noise_sd,
                                         std::uint64_t seed) {
    if (n_hours < 0) throw std::invalid_argument("simulate_cloud_cover: negative length");
    if (persistence < 0.0 || persistence >= 1.0 || noise_sd < 0.0)
        throw std::invalid_argument("simulate_cloud_cover: parameters out of range");
    SplitMix64 rng(seed);
    std::vector<double> series(static_cast<std::size_t>(n_hours));
    double c = 0.5;
    for (std::size_t t = 0; t < series.size(); ++t) {
        series[t] = c;
        c = std::clamp(persistence * c + rng.normal(0.0, noise_sd), 0.0, 1.0);
    }
    return series;
}

double power_from_weather(double irradiance_wm2, double ambient_f, double wind_ms,
                          const SynthConfig& config) {
    if (irradiance_wm2 < 0.0) throw std::invalid_argument("power_from_weather: negative irradiance");
    const double ambient_c = fahrenheit_to_celsius(ambient_f);
    const double cell_c = std::max(ambient_c, ambient_c + 0.03 * irradiance_wm2 - 1.0 * wind_ms);
    const double derate = 1.0 - config.temp_coeff_per_c * std::max(0.0, cell_c - 25.0);
    return std::max(0.0, config.panel_rated_kw * (irradiance_wm2 / 1000.0) * derate);
}

TimeSeriesFrame generate_dataset(const SynthConfig& config) {
    config.validate();
    const std::size_t n = static_cast<std::size_t>(config.n_hours);

    std::vector<Timestamp> ts(n);
    for (std::size_t i = 0; i < n; ++i) ts[i] = config.start.plus_hours(static_cast<std::int64_t>(i));

    const std::vector<double> cloud = simulate_cloud_cover(
        config.n_hours, config.cloud_persistence, config.cloud_noise_sd,
        derive_seed(config.seed, kCloud));

    std::vector<double> clear(n), irradiance(n);
    for (std::size_t i = 0; i < n; ++i) {
        clear[i] = clear_sky_irradiance(ts[i], config.latitude_deg);
        irradiance[i] = clear[i] * (1.0 - SolarConstants::cloud_attenuation * cloud[i]);
    }

    // Ambient temperature: seasonal + diurnal sinusoids (northern-hemisphere
    // phases: warmest around day 201 and 15:00) plus noise.
    SplitMix64 temp_rng(derive_seed(config.seed, kTemp));
    std::vector<double> ambient(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int doy = ts[i].day_of_year();
        const int hour = ts[i].calendar().hour;
        const double seasonal = 18.0 * std::sin(2.0 * kPi * (doy - 110) / 365.25);
        const double diurnal = 9.0 * std::sin(2.0 * kPi * (hour - 9) / 24.0);
        ambient[i] = 59.0 + seasonal + diurnal + temp_rng.normal(0.0, 2.0);
    }

    SplitMix64 hum_rng(derive_seed(config.seed, kHumidity));
    std::vector<double> humidity(n);
    for (std::size_t i = 0; i < n; ++i)
        humidity[i] = std::clamp(85.0 - 40.0 * irradiance[i] / 1000.0 + hum_rng.normal(0.0, 5.0),
                                 5.0, 100.0);

    // Wind: AR(1) around 4 m/s, clamped non-negative.
    SplitMix64 wind_rng(derive_seed(config.seed, kWind));
    std::vector<double> wind(n);
    double w = 4.0;
    for (std::size_t i = 0; i < n; ++i) {
        wind[i] = std::max(0.0, w);
        w = 4.0 + 0.8 * (w - 4.0) + wind_rng.normal(0.0, 1.2);
    }

    // Sunlight hours per civil day: hours with positive clear-sky irradiance,
    // broadcast to every row of that day.
    std::map<std::int64_t, double> daylight;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t day = ts[i].epoch_seconds / 86400;
        if (clear[i] > 0.0) daylight[day] += 1.0;
    }
    std::vector<double> sunlight(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = daylight.find(ts[i].epoch_seconds / 86400);
        sunlight[i] = it == daylight.end() ? 0.0 : it->second;
    }

    std::vector<double> okta(n), cloud_pct(n);
    std::vector<std::optional<std::string>> condition(n);
    for (std::size_t i = 0; i < n; ++i) {
        okta[i] = std::round(8.0 * cloud[i]);
        cloud_pct[i] = 100.0 * cloud[i];
        if (okta[i] <= 2.0)
            condition[i] = "clear";
        else if (okta[i] <= 5.0)
            condition[i] = "partly_cloudy";
        else
            condition[i] = "overcast";
    }

    SplitMix64 power_rng(derive_seed(config.seed, kPower));
    std::vector<double> power(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double clean = power_from_weather(irradiance[i], ambient[i], wind[i], config);
        power[i] = std::max(0.0, clean + power_rng.normal(0.0, config.noise_sd_kw));
    }

    std::vector<Column> columns;
    columns.push_back(Column::from_values(cols::irradiance, irradiance, "W/m2"));
    columns.push_back(Column::from_values(cols::cloud_fraction, cloud));
    columns.push_back(Column::from_values(cols::cloud_pct, cloud_pct, "%"));
    columns.push_back(Column::from_values(cols::cloud_okta, okta, "okta"));
    columns.push_back(Column::from_values(cols::ambient_f, ambient, "degF"));
    columns.push_back(Column::from_values(cols::humidity, humidity, "%"));
    columns.push_back(Column::from_values(cols::wind, wind, "m/s"));
    columns.push_back(Column::from_values(cols::sunlight_hours, sunlight, "h"));
    columns.push_back(Column::make_categorical(cols::condition, std::move(condition)));
    columns.push_back(Column::from_values(cols::power, power, "kWh"));
    return TimeSeriesFrame(std::move(ts), std::move(columns));
}

CsvSchema default_schema() {
    CsvSchema schema;
    schema.timestamp_column = "timestamp";
    schema.columns = {
        {cols::irradiance, ColumnKind::continuous},
        {cols::cloud_fraction, ColumnKind::continuous},
        {cols::cloud_pct, ColumnKind::continuous},
        {cols::cloud_okta, ColumnKind::continuous},
        {cols::ambient_f, ColumnKind::continuous},
        {cols::humidity, ColumnKind::continuous},
        {cols::wind, ColumnKind::continuous},
        {cols::sunlight_hours, ColumnKind::continuous},
        {cols::condition, ColumnKind::categorical},
        {cols::power, ColumnKind::continuous},
    };
    schema.units = {{cols::irradiance, "W/m2"}, {cols::cloud_pct, "%"},    {cols::cloud_okta, "okta"},
                    {cols::ambient_f, "degF"},  {cols::humidity, "%"},     {cols::wind, "m/s"},
                    {cols::sunlight_hours, "h"}, {cols::power, "kWh"}};
    return schema;
}

}  // namespace solarcast::synth
