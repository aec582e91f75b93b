#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "riscov/geometry.hpp"
#include "riscov/propagation.hpp"

namespace riscov {

enum class Mechanism {
    none = 0, // sentinel point, no valid link
    los,
    nlos,
    ris
};

std::string_view mechanism_name(Mechanism m);

/// Which link produced a map point's minimum. ris_id is set iff mech == ris.
struct WinnerTag {
    Mechanism mech = Mechanism::none;
    std::string cell_id;
    std::string ris_id;

    friend bool operator==(const WinnerTag&, const WinnerTag&) = default;
};

enum class MapMode {
    without_ris,
    with_ris
};

/// X x Y matrix of minimum path loss in dB plus the winning-link layer.
/// Uncoverable points carry +inf and an empty winner. Stored row-major,
/// row y = 0 first.
struct PathLossMap {
    int x_count = 0;
    int y_count = 0;
    double resolution = 0.0;
    std::string mode;        // "without_ris" | "with_ris" | "diff"
    std::string fingerprint; // "<world-hash>.<config-hash>"
    std::vector<double> values;
    std::vector<WinnerTag> winners;

    double value_at(int x, int y) const
    {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(x_count) +
                      static_cast<std::size_t>(x)];
    }
    const WinnerTag& winner_at(int x, int y) const
    {
        return winners[static_cast<std::size_t>(y) * static_cast<std::size_t>(x_count) +
                       static_cast<std::size_t>(x)];
    }

    /// Fingerprint part identifying the world independent of panel offsets.
    std::string world_part() const;
};

struct PointEval {
    double pl_db = 0.0;
    WinnerTag tag;
};

/// Center of grid cell (ix, iy) at receiver height.
Point3 grid_point(const AreaGrid& grid, int ix, int iy);

/// Minimum over the direct candidates: per cell, the LOS model when
/// geometric line of sight holds, the NLOS model otherwise. Cells outside
/// model validity are skipped; +inf with an empty tag when none remain.
/// Ties break by mechanism (LOS < NLOS < RIS), then cell id, then RIS id.
PointEval point_pl_no_ris(const Scenario& s, const Point3& p);

/// Minimum over the direct candidates plus every (cell, panel) pair where
/// the cell sees the panel, the panel sees the point, and the point lies in
/// the panel's servable half-space.
PointEval point_pl_with_ris(const Scenario& s, const Point3& p);

/// Evaluate the per-point operation at every grid center. Parallel over
/// rows; the result is bit-identical for any worker count. threads == 0
/// means hardware concurrency.
PathLossMap compute_map(const Scenario& s, MapMode mode, int threads = 0);

/// Value layer CSV: header "# X,Y,resolution,mode,fingerprint", then Y rows
/// of X comma-separated dB values (shortest round-trip formatting, "inf"
/// sentinels). Bit-exact round-trip.
std::string map_to_csv(const PathLossMap& m);
void write_map_csv(const PathLossMap& m, const std::string& path);
PathLossMap read_map_csv(const std::string& path);
PathLossMap parse_map_csv(const std::string& text);

/// Winner layer as a sibling CSV of "cellid|mech|risid" tokens under the
/// same header.
std::string winners_to_csv(const PathLossMap& m);
void write_winner_csv(const PathLossMap& m, const std::string& path);
void read_winner_csv(PathLossMap& m, const std::string& path);
void parse_winner_csv(PathLossMap& m, const std::string& text);

} // namespace riscov
