#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace lwr::hw {

// Timed physical quantities per channel, from "<t_s> <channel> <value>"
// lines. Values are linearly interpolated between points and held outside
// them.
class QuantityScript {
 public:
  void add(int channel, double t_s, double value);

  // Throws Error(kParse) naming the line number. '#' starts a comment.
  static QuantityScript parse(std::istream& in);
  static QuantityScript parse(std::string_view text);

  std::optional<double> value_at(int channel, double t_s) const;
  bool empty() const noexcept { return points_.empty(); }

 private:
  struct Point {
    double t_s;
    double value;
  };
  std::map<int, std::vector<Point>> points_;
};

}  // namespace lwr::hw
