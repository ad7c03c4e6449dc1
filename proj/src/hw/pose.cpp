#include "lwr/hw/pose.hpp"

#include <cmath>
#include <numbers>

namespace lwr::hw {

double normalize_heading(double deg) {
  double h = std::fmod(deg, 360.0);
  if (h < 0.0) h += 360.0;
  // -1e-17 + 360 rounds to 360.
  if (h >= 360.0) h -= 360.0;
  return h;
}

double heading_difference(double a_deg, double b_deg) {
  double d = normalize_heading(a_deg - b_deg);
  if (d > 180.0) d -= 360.0;
  return d;
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace lwr::hw
