#ifndef WPC_CONFIG_HPP
#define WPC_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpc/coupling.hpp"
#include "wpc/model.hpp"

namespace wpc {

struct GridConfig {
    double L = 1.0;
    std::size_t N = 128;
};

struct InitialDataConfig {
    std::string preset = "zero"; // zero | sine | gaussian | raw
    double amplitude_p = 0.0;
    double amplitude_theta = 0.0;
    int mode_k = 1;
    double center = 0.5;
    double width = 0.1;
    // Initial heat flux for the smooth presets: "fourier" (-kappa_a grad theta0) or "zero".
    std::string flux = "fourier";
    // Only for preset "raw": p0, p1, theta0 at nodes; q0 at faces.
    std::vector<double> p0, p1, theta0, q0;
};

struct TimeConfig {
    double T = 0.0;
    double dt = 1e-3;
    int output_stride = 1;
    std::vector<double> snapshot_times;

    long steps() const;
};

struct SimConfig {
    GridConfig grid;
    PhysicalParams params;
    SpeedOfSoundModel speed_model;
    InitialDataConfig initial_data;
    TimeConfig time;
    PicardSettings picard;
    std::vector<double> tau_list;
    std::uint64_t seed = 0;

    Grid1D make_grid() const { return Grid1D(grid.L, grid.N); }
};

/// Parses and validates a JSON configuration document. Unknown keys are rejected.
/// Throws ParseError, ValidationError or UnknownKey.
SimConfig load_config(std::string_view text);
SimConfig load_config_file(const std::filesystem::path& path);

struct InitialFields {
    NodeField p0, p1, theta0;
    FaceField q0;
};

/// Evaluates the initial-data preset on the grid.
InitialFields make_initial_fields(const SimConfig& config);

} // namespace wpc

#endif
