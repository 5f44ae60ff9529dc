// Copyright 2026 The propkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROPKIT_ANTENNA_HPP
#define PROPKIT_ANTENNA_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace propkit::antenna {

/// Uniform angular sampling: start, step and count, all in degrees.
struct AngleGrid {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double at(std::size_t i) const { return start + step * static_cast<double>(i); }
    double last() const { return at(count - 1); }
    friend bool operator==(const AngleGrid&, const AngleGrid&) = default;
};

/// Gain grid in dBi sampled over azimuth [0, 360) and a sub-range of
/// elevation. Angles are relative to boresight; `boresight_azimuth` and
/// `mechanical_tilt` rotate the pattern into site coordinates. Tilt is the
/// elevation of boresight, so a downtilted panel has a negative tilt.
class AntennaPattern {
public:
    AntennaPattern() = default;

    /// `gain` is elevation-major: gain[iel * azimuth.count + iaz].
    AntennaPattern(AngleGrid azimuth, AngleGrid elevation, std::vector<double> gain,
                   double boresight_azimuth = 0.0, double mechanical_tilt = 0.0);

    static AntennaPattern constant(double gain_dbi, double az_step = 1.0, double el_step = 1.0);

    const AngleGrid& azimuth() const { return azimuth_; }
    const AngleGrid& elevation() const { return elevation_; }
    const std::vector<double>& gain() const { return gain_; }
    double boresight_azimuth() const { return boresight_azimuth_; }
    double mechanical_tilt() const { return mechanical_tilt_; }

    double node(std::size_t iaz, std::size_t iel) const {
        return gain_[iel * azimuth_.count + iaz];
    }

    bool congruent(const AntennaPattern& other) const {
        return azimuth_ == other.azimuth_ && elevation_ == other.elevation_;
    }

    AntennaPattern oriented(double boresight_azimuth, double mechanical_tilt) const;

private:
    AngleGrid azimuth_;
    AngleGrid elevation_;
    std::vector<double> gain_;
    double boresight_azimuth_ = 0.0;
    double mechanical_tilt_ = 0.0;
};

struct BeamLayout {
    std::size_t rows = 0;
    std::size_t columns = 0;
};

struct BeamSet {
    std::vector<AntennaPattern> beams;
    BeamLayout layout;
};

struct GainLookup {
    double gain_dbi = 0.0;
    bool elevation_clamped = false;
};

/// Pointwise maximum over every beam. Throws ValidationError on an empty
/// set or beams sampled on different grids.
AntennaPattern envelope(const BeamSet& beams);

/// Bilinear interpolation in dB. Azimuth wraps across 360/0; elevations
/// outside the sampled band clamp to the nearest row and set the flag.
GainLookup gain_at(const AntennaPattern& pattern, double azimuth_deg, double elevation_deg);

double peak_gain(const AntennaPattern& pattern);

/// Grid of Gaussian-lobe beams: `rows` elevation pointings by `columns`
/// azimuth pointings, each peaking at `peak_dbi`. Stands in for vendor
/// per-beam data, which is not published.
BeamSet synthetic_grid_of_beams(std::size_t rows = 3, std::size_t columns = 16,
                                double peak_dbi = 27.0, double az_span_deg = 120.0,
                                double el_span_deg = 30.0, double step_deg = 1.0);

// CSV `azimuth_deg,elevation_deg,gain_dbi`, one row per grid node.
AntennaPattern read_pattern_csv(std::istream& in);
AntennaPattern load_pattern(const std::string& path);
void write_pattern_csv(std::ostream& out, const AntennaPattern& pattern);

/// Manifest JSON: {"layout": {"rows": R, "columns": C},
///                 "beams": [{"id": 0, "file": "beam_00.csv"}, ...]}
/// with beam files resolved relative to the manifest directory.
BeamSet load_beam_set(const std::string& manifest_path);

}  // namespace propkit::antenna

#endif  // PROPKIT_ANTENNA_HPP
