#pragma once

namespace lwr::hw {

// Planar pose. North is +y, East is +x, heading is degrees clockwise from
// North in [0, 360).
struct Pose {
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_deg = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

double normalize_heading(double deg);

// Signed smallest difference a - b, in (-180, 180].
double heading_difference(double a_deg, double b_deg);

double deg_to_rad(double deg);

}  // namespace lwr::hw
