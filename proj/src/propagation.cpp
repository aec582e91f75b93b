#include "riscov/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riscov {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinDistance2d = 10.0;
constexpr double kMaxDistance2d = 5000.0;

/// Clamp short links to the 10 m validity floor, recomputing the slant
/// distance from the height difference.
LinkGeometry clamped(const LinkGeometry& g)
{
    LinkGeometry out = g;
    if (out.d2d < kMinDistance2d)
    {
        out.d2d = kMinDistance2d;
        out.d3d = std::hypot(kMinDistance2d, g.tx_height - g.rx_height);
    }
    return out;
}

void check_range(const LinkGeometry& g)
{
    if (g.d2d > kMaxDistance2d)
    {
        throw std::domain_error("uma path loss: 2-D distance " + std::to_string(g.d2d) +
                                " m beyond the 5 km validity bound");
    }
}

} // namespace

double uma_breakpoint_distance(double tx_height, double rx_height, double frequency_ghz)
{
    // Effective environment height 1 m.
    return 4.0 * (tx_height - 1.0) * (rx_height - 1.0) * (frequency_ghz * 1e9) / speed_of_light;
}

double uma_los_pl(const LinkGeometry& g)
{
    check_range(g);
    const LinkGeometry c = clamped(g);
    const double d_bp = uma_breakpoint_distance(c.tx_height, c.rx_height, c.frequency_ghz);
    if (c.d2d <= d_bp)
    {
        return 28.0 + 22.0 * std::log10(c.d3d) + 20.0 * std::log10(c.frequency_ghz);
    }
    const double dh = c.tx_height - c.rx_height;
    return 28.0 + 40.0 * std::log10(c.d3d) + 20.0 * std::log10(c.frequency_ghz) -
           9.0 * std::log10(d_bp * d_bp + dh * dh);
}

double uma_nlos_pl(const LinkGeometry& g)
{
    check_range(g);
    if (g.rx_height < 1.5 || g.rx_height > 22.5)
    {
        throw std::domain_error("uma nlos path loss: receiver height " +
                                std::to_string(g.rx_height) + " m outside [1.5, 22.5]");
    }
    const LinkGeometry c = clamped(g);
    const double pl_nlos = 13.54 + 39.08 * std::log10(c.d3d) +
                           20.0 * std::log10(c.frequency_ghz) - 0.6 * (c.rx_height - 1.5);
    return std::max(uma_los_pl(g), pl_nlos);
}

double ris_far_field_min_distance(const RisPanel& panel)
{
    return 10.0 * std::max(panel.rows * panel.element_width, panel.cols * panel.element_height);
}

double ris_unit_cell_gain(const RisPanel& panel, double wavelength)
{
    if (panel.element_gain_dbi)
    {
        return std::pow(10.0, *panel.element_gain_dbi / 10.0);
    }
    return 4.0 * kPi * panel.element_width * panel.element_height / (wavelength * wavelength);
}

double ris_unit_cell_pattern(const RisPanel& panel, double theta)
{
    if (panel.pattern == UnitCellPattern::isotropic)
    {
        return 1.0;
    }
    return theta < kPi / 2.0 ? std::max(std::cos(theta), 0.0) : 0.0;
}

double ris_ffbc_pl(const RisLinkGeometry& g)
{
    const RisPanel& panel = *g.panel;
    const double ff_min = ris_far_field_min_distance(panel);
    if (g.d1 < ff_min || g.d2 < ff_min)
    {
        throw std::domain_error("ris ffbc path loss: link distance below the far-field bound of " +
                                std::to_string(ff_min) + " m for panel '" + panel.id + "'");
    }

    const double lambda = wavelength_m(g.frequency_ghz);
    const double gain = ris_unit_cell_gain(panel, lambda);
    const double f_t = ris_unit_cell_pattern(panel, g.theta_t);
    const double f_r = ris_unit_cell_pattern(panel, g.theta_r);
    if (f_t <= 0.0 || f_r <= 0.0)
    {
        return std::numeric_limits<double>::infinity();
    }

    const double m = static_cast<double>(panel.rows);
    const double n = static_cast<double>(panel.cols);
    const double a = panel.reflection_amplitude;
    const double numerator = 64.0 * kPi * kPi * kPi * (g.d1 * g.d2) * (g.d1 * g.d2);
    const double denominator = gain * m * m * n * n * panel.element_width *
                               panel.element_height * lambda * lambda * f_t * f_r * a * a;
    return 10.0 * std::log10(numerator / denominator);
}

double received_power_dbm(const CellSite& cell, double path_loss_db)
{
    return cell.tx_power_dbm + cell.antenna_gain_dbi - cell.feeder_loss_db - path_loss_db -
           cell.interference_margin_db - cell.doppler_margin_db - cell.fade_margin_db -
           cell.shadow_margin_db - cell.implementation_loss_db;
}

} // namespace riscov
