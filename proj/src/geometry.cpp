#include "riscov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riscov {

namespace {

constexpr double kEdgeEps = 1e-9; // m, on-edge classification

double cross2(double ax, double ay, double bx, double by)
{
    return ax * by - ay * bx;
}

double point_segment_distance(const Vec2& p, const Vec2& u, const Vec2& v)
{
    const double dx = v.x - u.x;
    const double dy = v.y - u.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0)
    {
        t = ((p.x - u.x) * dx + (p.y - u.y) * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    const double ex = u.x + t * dx - p.x;
    const double ey = u.y + t * dy - p.y;
    return std::sqrt(ex * ex + ey * ey);
}

/// Even-odd test with the boundary counted as outside (grazing contact is
/// visible by contract).
bool strictly_inside(const Vec2& p, const std::vector<Vec2>& poly)
{
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= kEdgeEps)
        {
            return false;
        }
    }
    bool in = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
    {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y))
        {
            const double x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_int)
            {
                in = !in;
            }
        }
    }
    return in;
}

/// Interpolated segment height at parameter t.
double z_at(const Point3& a, const Point3& b, double t)
{
    return a.z + t * (b.z - a.z);
}

/// Collect the parameters where the 2-D segment a->b crosses the footprint
/// boundary, then decide per inside-interval whether the segment dips below
/// the roof. Between consecutive crossings the inside/outside state is
/// constant, so a midpoint test classifies the whole interval.
bool blocked_by_building(const Point3& a, const Point3& b, const Building& bld)
{
    // A segment that stays at/above the roof cannot enter the prism.
    if (std::min(a.z, b.z) >= bld.roof_height - kEdgeEps)
    {
        return false;
    }

    const std::vector<Vec2>& poly = bld.footprint;
    const std::size_t n = poly.size();
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len = std::sqrt(dx * dx + dy * dy);

    if (len <= kEdgeEps)
    {
        // Degenerate in 2-D (near-vertical link): a single footprint test.
        if (!strictly_inside(Vec2{a.x, a.y}, poly))
        {
            return false;
        }
        return std::min(a.z, b.z) < bld.roof_height - kEdgeEps;
    }

    const double t_eps = kEdgeEps / len;

    std::vector<double> ts;
    ts.reserve(n + 2);
    ts.push_back(0.0);
    ts.push_back(1.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        const Vec2& u = poly[i];
        const Vec2& v = poly[(i + 1) % n];
        const double ex = v.x - u.x;
        const double ey = v.y - u.y;
        const double denom = cross2(dx, dy, ex, ey);
        if (std::abs(denom) <= kEdgeEps * kEdgeEps)
        {
            continue; // parallel or collinear: running along an edge is contact, not entry
        }
        const double wx = u.x - a.x;
        const double wy = u.y - a.y;
        const double t = cross2(wx, wy, ex, ey) / denom;
        const double s = cross2(wx, wy, dx, dy) / denom;
        if (t >= -t_eps && t <= 1.0 + t_eps && s >= -1e-9 && s <= 1.0 + 1e-9)
        {
            ts.push_back(std::clamp(t, 0.0, 1.0));
        }
    }
    std::sort(ts.begin(), ts.end());

    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
    {
        const double t0 = ts[k];
        const double t1 = ts[k + 1];
        if (t1 - t0 <= t_eps)
        {
            continue;
        }
        const double tm = 0.5 * (t0 + t1);
        const Vec2 mid{a.x + tm * dx, a.y + tm * dy};
        if (!strictly_inside(mid, poly))
        {
            continue;
        }
        if (std::min(z_at(a, b, t0), z_at(a, b, t1)) < bld.roof_height - kEdgeEps)
        {
            return true;
        }
    }
    return false;
}

} // namespace

double dist2d(const Point3& a, const Point3& b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

double dist3d(const Point3& a, const Point3& b)
{
    return std::hypot(b.x - a.x, b.y - a.y, b.z - a.z);
}

ObstacleSet::ObstacleSet(const std::vector<Building>& buildings)
{
    entries_.reserve(buildings.size());
    for (const Building& bld : buildings)
    {
        Entry e{&bld,
                std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
        for (const Vec2& v : bld.footprint)
        {
            e.min_x = std::min(e.min_x, v.x);
            e.min_y = std::min(e.min_y, v.y);
            e.max_x = std::max(e.max_x, v.x);
            e.max_y = std::max(e.max_y, v.y);
        }
        entries_.push_back(e);
    }
}

LosResult ObstacleSet::line_of_sight(const Point3& a, const Point3& b) const
{
    const double seg_min_x = std::min(a.x, b.x) - kEdgeEps;
    const double seg_max_x = std::max(a.x, b.x) + kEdgeEps;
    const double seg_min_y = std::min(a.y, b.y) - kEdgeEps;
    const double seg_max_y = std::max(a.y, b.y) + kEdgeEps;

    for (const Entry& e : entries_)
    {
        if (seg_max_x < e.min_x || seg_min_x > e.max_x || seg_max_y < e.min_y ||
            seg_min_y > e.max_y)
        {
            continue;
        }
        if (blocked_by_building(a, b, *e.building))
        {
            return LosResult{false, e.building->id};
        }
    }
    return LosResult{true, std::nullopt};
}

LosResult line_of_sight(const Point3& a, const Point3& b, const std::vector<Building>& buildings)
{
    return ObstacleSet(buildings).line_of_sight(a, b);
}

bool polygon_is_simple(const std::vector<Vec2>& poly)
{
    const std::size_t n = poly.size();
    if (n < 3)
    {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            if (std::abs(poly[i].x - poly[j].x) <= kEdgeEps &&
                std::abs(poly[i].y - poly[j].y) <= kEdgeEps)
            {
                return false;
            }
        }
    }
    // Pairwise proper-intersection test between non-adjacent edges.
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return cross2(q.x - p.x, q.y - p.y, r.x - p.x, r.y - p.y);
    };
    for (std::size_t i = 0; i < n; ++i)
    {
        const Vec2& p1 = poly[i];
        const Vec2& p2 = poly[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j)
        {
            // Skip edges sharing a vertex.
            if (j == i || (j + 1) % n == i || (i + 1) % n == j)
            {
                continue;
            }
            const Vec2& q1 = poly[j];
            const Vec2& q2 = poly[(j + 1) % n];
            const double o1 = orient(p1, p2, q1);
            const double o2 = orient(p1, p2, q2);
            const double o3 = orient(q1, q2, p1);
            const double o4 = orient(q1, q2, p2);
            if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)))
            {
                return false;
            }
        }
    }
    return true;
}

Vec2 nearest_edge_outward_normal(const Vec2& p, const std::vector<Building>& buildings)
{
    if (buildings.empty())
    {
        throw validation_error("cannot resolve a facing normal: scenario has no buildings");
    }

    double best_dist = std::numeric_limits<double>::infinity();
    Vec2 best_normal{1.0, 0.0};

    for (const Building& bld : buildings)
    {
        // Signed area decides the winding, hence the outward side.
        double area2 = 0.0;
        const std::size_t n = bld.footprint.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            const Vec2& u = bld.footprint[i];
            const Vec2& v = bld.footprint[(i + 1) % n];
            area2 += u.x * v.y - v.x * u.y;
        }
        const double ccw = area2 >= 0.0 ? 1.0 : -1.0;

        for (std::size_t i = 0; i < n; ++i)
        {
            const Vec2& u = bld.footprint[i];
            const Vec2& v = bld.footprint[(i + 1) % n];
            const double d = point_segment_distance(p, u, v);
            if (d < best_dist)
            {
                best_dist = d;
                const double ex = v.x - u.x;
                const double ey = v.y - u.y;
                const double len = std::sqrt(ex * ex + ey * ey);
                if (len > 0.0)
                {
                    best_normal = Vec2{ccw * ey / len, -ccw * ex / len};
                }
            }
        }
    }
    return best_normal;
}

Point3 cell_antenna_point(const CellSite& cell)
{
    return Point3{cell.position.x, cell.position.y, cell.antenna_height};
}

Point3 panel_center_point(const RisPanel& panel)
{
    return Point3{panel.position.x, panel.position.y, panel.current_height()};
}

VisibilityMatrix visibility_matrix(const Scenario& s, const std::vector<double>& offsets)
{
    if (offsets.empty())
    {
        throw std::domain_error("visibility_matrix: offsets must be non-empty");
    }

    VisibilityMatrix chi;
    chi.cell_count = static_cast<int>(s.cells.size());
    chi.panel_count = static_cast<int>(s.ris_panels.size());
    chi.bits.assign(static_cast<std::size_t>(chi.cell_count) *
                        static_cast<std::size_t>(chi.panel_count),
                    0);

    const ObstacleSet obstacles(s.buildings);
    for (double offset : offsets)
    {
        for (int j = 0; j < chi.panel_count; ++j)
        {
            RisPanel panel = s.ris_panels[static_cast<std::size_t>(j)];
            panel.height_offset = offset;
            const Point3 center = panel_center_point(panel);
            for (int i = 0; i < chi.cell_count; ++i)
            {
                std::uint8_t& bit =
                    chi.bits[static_cast<std::size_t>(i) * static_cast<std::size_t>(chi.panel_count) +
                             static_cast<std::size_t>(j)];
                if (bit)
                {
                    continue;
                }
                const Point3 antenna = cell_antenna_point(s.cells[static_cast<std::size_t>(i)]);
                if (obstacles.line_of_sight(antenna, center).visible)
                {
                    bit = 1;
                }
            }
        }
    }
    return chi;
}

} // namespace riscov
