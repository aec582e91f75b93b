#pragma once

#include "riscov/scenario.hpp"

namespace riscov {

inline constexpr double speed_of_light = 299792458.0; // m/s

inline double wavelength_m(double frequency_ghz)
{
    return speed_of_light / (frequency_ghz * 1e9);
}

/// Direct-link geometry feeding the urban-macro models.
struct LinkGeometry {
    double d2d = 0.0;           // m
    double d3d = 0.0;           // m
    double tx_height = 0.0;     // m (h_BS)
    double rx_height = 0.0;     // m (h_UT)
    double frequency_ghz = 0.0;
};

/// Dual-slope breakpoint distance with effective environment height 1 m.
double uma_breakpoint_distance(double tx_height, double rx_height, double frequency_ghz);

/// Urban-macro LOS path loss, dual slope. Distances below 10 m are clamped
/// to 10 m (d3d recomputed accordingly); throws std::domain_error past the
/// 5 km validity bound.
double uma_los_pl(const LinkGeometry& g);

/// Urban-macro NLOS path loss: max of the LOS value and the NLOS expression.
/// Additionally requires 1.5 m <= rx_height <= 22.5 m.
double uma_nlos_pl(const LinkGeometry& g);

/// Reflected-link geometry through a panel. Angles are measured from the
/// panel normal; [0, pi/2) for a servable link.
struct RisLinkGeometry {
    double d1 = 0.0;      // m, cell -> panel (3-D)
    double d2 = 0.0;      // m, panel -> receiver (3-D)
    double theta_t = 0.0; // rad, departure (towards the cell)
    double theta_r = 0.0; // rad, arrival (towards the receiver)
    const RisPanel* panel = nullptr;
    double frequency_ghz = 0.0;
};

/// Both terminals must be at least this far from the panel for the
/// far-field model to apply: 10x the larger aperture dimension.
double ris_far_field_min_distance(const RisPanel& panel);

/// Unit-cell gain: the explicit per-panel override when present, otherwise
/// the aperture-matched value 4*pi*d_m*d_n/lambda^2.
double ris_unit_cell_gain(const RisPanel& panel, double wavelength);

/// Normalized unit-cell power pattern F(theta); 0 past 90 degrees.
double ris_unit_cell_pattern(const RisPanel& panel, double theta);

/// End-to-end far-field beamforming path loss of the cell->panel->receiver
/// link. Terminal antenna gains are excluded (applied once in the link
/// budget). Throws std::domain_error when the far-field precondition is
/// violated; returns +inf when the pattern nulls the link (theta >= pi/2).
double ris_ffbc_pl(const RisLinkGeometry& g);

/// Link budget: P_RX = P_TX,max + G_a - L_f - PL - IM - DM - FM - SM - IL.
double received_power_dbm(const CellSite& cell, double path_loss_db);

} // namespace riscov
