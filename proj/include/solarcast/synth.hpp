#pragma once

#include <cstdint>
#include <string>

#include "solarcast/csv.hpp"
#include "solarcast/frame.hpp"

namespace solarcast::synth {

// Column names of the generated frame.
namespace cols {
inline constexpr const char* irradiance = "irradiance_wm2";
inline constexpr const char* cloud_fraction = "cloud_fraction";
inline constexpr const char* cloud_pct = "cloud_pct";
inline constexpr const char* cloud_okta = "cloud_okta";
inline constexpr const char* ambient_f = "ambient_temp_f";
inline constexpr const char* humidity = "humidity_pct";
inline constexpr const char* wind = "wind_ms";
inline constexpr const char* sunlight_hours = "sunlight_hours";
inline constexpr const char* condition = "weather_condition";
inline constexpr const char* power = "power_kwh";
}  // namespace cols

struct SolarConstants {
    static constexpr double clear_sky_peak_wm2 = 1000.0;
    static constexpr double axial_tilt_deg = 23.44;
    static constexpr double cloud_attenuation = 0.75;  // irradiance multiplier at full cover
};

struct SynthConfig {
    double latitude_deg = 52.0;
    Timestamp start{1704067200};  // 2024-01-01T00:00:00Z
    std::int64_t n_hours = 2880;  // 120 days
    double cloud_persistence = 0.85;  // AR(1) coefficient, in [0,1)
    double cloud_noise_sd = 0.18;
    double panel_rated_kw = 5.0;
    double temp_coeff_per_c = 0.004;  // output derating per degC of cell temp above 25
    double noise_sd_kw = 0.15;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

/// Geometric clear-sky irradiance, W/m^2. Solar declination from the day of
/// year, hour angle 15 deg per hour off solar noon; timestamps are treated as
/// local solar time. Throws for |latitude| > 66 (no polar day/night handling).
double clear_sky_irradiance(Timestamp when, double latitude_deg);

/// Bounded AR(1) cloud-cover fraction: c_t = clamp(p*c_{t-1} + eps, 0, 1),
/// eps ~ Normal(0, noise_sd), c_0 = 0.5. The returned series starts at c_0.
std::vector<double> simulate_cloud_cover(std::int64_t n_hours, double persistence, double noise_sd,
                                         std::uint64_t seed);

/// PV output for one hour, kWh. Cell temperature rises 0.03 degC per W/m^2
/// and drops 1 degC per m/s of wind, floored at ambient; output derates by
/// temp_coeff per degC above 25 and never goes negative.
double power_from_weather(double irradiance_wm2, double ambient_f, double wind_ms,
                          const SynthConfig& config);

/// Hourly weather + PV frame with diurnal and seasonal structure. Every
/// series draws from its own sub-seed, so the result is a pure function of
/// the config. Requires n_hours >= 48.
TimeSeriesFrame generate_dataset(const SynthConfig& config);

/// Schema matching generate_dataset's output, for re-ingesting written CSVs.
CsvSchema default_schema();

}  // namespace solarcast::synth
