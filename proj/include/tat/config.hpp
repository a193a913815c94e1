#pragma once

#include <string>

#include "tat/forward.hpp"
#include "tat/phantom.hpp"

namespace tat {

// Raised on NaN/Inf outputs or violated numerical contracts (exit code 1 in
// the CLI, as opposed to usage/IO problems which exit 2).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plain text configuration: "key = value" lines, '#' comments, sections
// [phantom], [grids], [acquisition], [recon].  Unknown keys are collected
// and reported together.
struct Config {
    Phantom phantom;

    // [grids]
    int n_time = 256;
    double T = 2.0;
    double tail_fraction = 0.125;
    int m_detectors = 1024;
    int pad_factor = 4;

    // [acquisition]
    AcquisitionConfig acquisition;
    double noise = 0.0;
    uint64_t seed = 20240801ull;

    // [recon]
    std::string mode = "reduced";
    int n_alpha = 0;      // 0: detector count
    int image_n = 512;
    double apodize = 0.0;
    int filter_upsample = 4;
    int filter_pad = 2;

    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    TimeGrid time_grid() const { return TimeGrid::make(n_time, T, tail_fraction, pad_factor); }
    AngularGrid angular_grid() const { return AngularGrid(m_detectors); }
};

}  // namespace tat
