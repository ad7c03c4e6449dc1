#pragma once

#include <string_view>

#include "lwr/fw/daq_fw.hpp"
#include "lwr/fw/sample.hpp"

namespace lwr::daps {

// Returned for gas channels when the input voltage reaches vref and the
// transfer cannot be inverted.
inline constexpr double kGasSaturated = -1.0;

// Engineering units: analog codes go back through the PGA and the inverse
// sensor transfer, compass tenths become degrees.
double calibrate(const fw::Sample& sample, const fw::ChannelConfig& config, double vref);

std::string_view unit_for(const fw::ChannelConfig& config);

}  // namespace lwr::daps
