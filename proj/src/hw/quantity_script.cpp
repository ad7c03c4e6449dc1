#include "lwr/hw/quantity_script.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "lwr/error.hpp"

namespace lwr::hw {

void QuantityScript::add(int channel, double t_s, double value) {
  auto& pts = points_[channel];
  auto pos = std::upper_bound(pts.begin(), pts.end(), t_s,
                              [](double t, const Point& p) { return t < p.t_s; });
  pts.insert(pos, Point{t_s, value});
}

QuantityScript QuantityScript::parse(std::istream& in) {
  QuantityScript script;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double t = 0.0;
    int channel = 0;
    double value = 0.0;
    if (!(fields >> t)) continue;  // blank
    std::string extra;
    if (!(fields >> channel >> value) || (fields >> extra)) {
      throw Error(ErrorCode::kParse,
                  "quantity script line " + std::to_string(line_no) +
                      ": expected '<t_s> <channel> <value>'");
    }
    script.add(channel, t, value);
  }
  return script;
}

QuantityScript QuantityScript::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

std::optional<double> QuantityScript::value_at(int channel, double t_s) const {
  auto it = points_.find(channel);
  if (it == points_.end() || it->second.empty()) return std::nullopt;
  const auto& pts = it->second;
  if (t_s <= pts.front().t_s) return pts.front().value;
  if (t_s >= pts.back().t_s) return pts.back().value;
  auto hi = std::upper_bound(pts.begin(), pts.end(), t_s,
                             [](double t, const Point& p) { return t < p.t_s; });
  auto lo = hi - 1;
  const double span = hi->t_s - lo->t_s;
  if (span <= 0.0) return hi->value;
  const double frac = (t_s - lo->t_s) / span;
  return lo->value + frac * (hi->value - lo->value);
}

}  // namespace lwr::hw
