#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riscov/scenario.hpp"

namespace riscov {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0; // height above ground

    friend bool operator==(const Point3&, const Point3&) = default;
};

struct LosResult {
    bool visible = true;
    std::optional<std::string> blocking_building_id; // present iff !visible
};

double dist2d(const Point3& a, const Point3& b);
double dist3d(const Point3& a, const Point3& b);

/// Precomputed obstacle view over a building list (footprint bounding boxes).
/// Holds pointers into the caller's vector; the buildings must outlive it.
class ObstacleSet {
  public:
    ObstacleSet() = default;
    explicit ObstacleSet(const std::vector<Building>& buildings);

    /// 2.5-D occlusion: the segment a->b is blocked iff it passes through a
    /// building prism's interior, i.e. the 2-D segment crosses the footprint
    /// and dips below roof height inside it. Grazing contact (on an edge, on
    /// a roof plane) counts as visible; classification epsilon is 1e-9 m.
    LosResult line_of_sight(const Point3& a, const Point3& b) const;

  private:
    struct Entry {
        const Building* building;
        double min_x, min_y, max_x, max_y;
    };
    std::vector<Entry> entries_;
};

LosResult line_of_sight(const Point3& a, const Point3& b,
                        const std::vector<Building>& buildings);

/// True iff the polygon has >= 3 vertices, no repeated vertices, and no two
/// non-adjacent edges intersect. Used by scenario validation.
bool polygon_is_simple(const std::vector<Vec2>& poly);

/// Outward unit normal of the building edge closest to p; ties broken by
/// building then edge order. Errors via validation_error when there are no
/// buildings. Used to resolve omitted panel facing normals at load.
Vec2 nearest_edge_outward_normal(const Vec2& p, const std::vector<Building>& buildings);

/// Transmitter evaluation point of a cell: planar position at antenna height.
Point3 cell_antenna_point(const CellSite& cell);

/// Panel center at its current (default + offset) height.
Point3 panel_center_point(const RisPanel& panel);

/// Binary cell x panel visibility indicator over a set of offset
/// configurations.
struct VisibilityMatrix {
    int cell_count = 0;
    int panel_count = 0;
    std::vector<std::uint8_t> bits; // row-major, cell-major

    bool at(int cell, int panel) const
    {
        return bits[static_cast<std::size_t>(cell) * static_cast<std::size_t>(panel_count) +
                    static_cast<std::size_t>(panel)] != 0;
    }
};

/// chi[i][j] = 1 iff cell i has line of sight to panel j's center in at
/// least one of the given offset configurations. Throws std::domain_error
/// when offsets is empty.
VisibilityMatrix visibility_matrix(const Scenario& s, const std::vector<double>& offsets);

} // namespace riscov
