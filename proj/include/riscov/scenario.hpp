#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riscov/errors.hpp"

namespace riscov {

/// Planar vector/point in the local metric frame (x east, y north).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Rectangular evaluation area discretized into square cells. Receivers are
/// evaluated at cell centers at rx_height above ground.
struct AreaGrid {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double width = 0.0;      // m
    double height = 0.0;     // m
    double resolution = 0.0; // m per grid step
    double rx_height = 1.5;  // m

    int x_count() const;
    int y_count() const;
    bool contains(const Vec2& p) const;

    friend bool operator==(const AreaGrid&, const AreaGrid&) = default;
};

/// Extruded 2-D footprint with a flat roof; the LOS obstacle primitive.
struct Building {
    std::string id;
    std::vector<Vec2> footprint; // simple polygon, >= 3 vertices
    double roof_height = 0.0;    // m above ground

    friend bool operator==(const Building&, const Building&) = default;
};

/// One transmitting cell. A physical site with three bands appears as three
/// records sharing a position, matching the per-column layout of the
/// configuration tables. The band/transceiver rows that no computation uses
/// are retained verbatim so published configurations stay representable.
struct CellSite {
    std::string id;
    Vec2 position;
    double antenna_height = 0.0; // m (h_BS)
    double frequency_mhz = 0.0;

    double tx_power_dbm = 0.0;
    double antenna_gain_dbi = 0.0;
    double feeder_loss_db = 0.0;
    double noise_figure_db = 0.0;
    double interference_margin_db = 0.0;
    double doppler_margin_db = 0.0;
    double fade_margin_db = 0.0;
    double shadow_margin_db = 0.0;
    double implementation_loss_db = 0.0;

    int antenna_elements = 1;
    double bandwidth_mhz = 0.0;
    int subcarriers_used = 0;
    int subcarriers_total = 0;
    double sampling_factor = 0.0;
    double reuse_factor = 0.0;
    double coherence_time_ms = 0.0;
    double coherence_bandwidth_mhz = 0.0;
    double spatial_duty_cycle_pct = 0.0;

    friend bool operator==(const CellSite&, const CellSite&) = default;
};

/// Normalized power pattern of a reflecting unit cell.
enum class UnitCellPattern {
    cosine,   // F(theta) = cos(theta), clamped to 0 past 90 degrees
    isotropic // F = 1
};

/// Passive reflecting panel mounted on a building edge.
struct RisPanel {
    std::string id;
    Vec2 position;
    double default_height = 0.0; // m
    double height_offset = 0.0;  // m; current = default + offset
    int rows = 102;              // elements per column (M)
    int cols = 100;              // elements per row (N)
    double element_width = 0.01; // m (d_m)
    double element_height = 0.01; // m (d_n)
    double reflection_amplitude = 0.9; // (0, 1]
    std::optional<double> element_gain_dbi; // unit-cell gain; aperture-matched when absent
    UnitCellPattern pattern = UnitCellPattern::cosine;
    Vec2 facing_normal; // unit vector, resolved at load when omitted

    double current_height() const { return default_height + height_offset; }

    friend bool operator==(const RisPanel&, const RisPanel&) = default;
};

/// Immutable world description consumed by every other module. Safe to
/// share read-only across parallel workers once loaded.
struct Scenario {
    AreaGrid grid;
    std::vector<Building> buildings;
    std::vector<CellSite> cells;
    std::vector<RisPanel> ris_panels;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parse and validate a scenario document. Defaults are resolved into the
/// returned value (rx_height, height_offset, panel geometry, band parameter
/// columns, facing normals). Throws parse_error with field context on
/// malformed input and validation_error naming the entity on a violated
/// invariant.
Scenario load_scenario(const std::string& path);

/// Same as load_scenario but from an in-memory document.
Scenario parse_scenario(const std::string& text);

/// Serialize with all fields resolved; parse_scenario(scenario_to_json(s))
/// reproduces s field-for-field.
std::string scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

/// Re-check every scenario invariant. load_scenario/parse_scenario call
/// this; exposed for programmatically built scenarios.
void validate_scenario(const Scenario& s);

/// Copy of s with every panel's height_offset set to offset_m. Throws
/// std::domain_error naming the panel if a resulting height would be <= 0.
Scenario apply_ris_offset(const Scenario& s, double offset_m);

/// Content hash with panel height offsets zeroed: identifies the world
/// regardless of the sweep configuration.
std::string world_fingerprint(const Scenario& s);

/// Content hash of the scenario exactly as given, offsets included.
std::string config_fingerprint(const Scenario& s);

} // namespace riscov
