#include "crossfire/traffic_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crossfire::traffic {

PhaseSchedule PhaseSchedule::make(double cycle, double green_ns) {
  if (!(cycle > 0.0) || !std::isfinite(cycle)) throw std::domain_error("cycle must be positive");
  if (!(green_ns > 0.0 && green_ns < cycle)) {
    throw std::domain_error("NS green " + std::to_string(green_ns) + " outside (0, cycle)");
  }
  return {cycle, green_ns};
}

double green_ratio(double green, double cycle) {
  if (!(cycle > 0.0)) throw std::domain_error("cycle must be positive");
  if (!(green > 0.0 && green < cycle)) throw std::domain_error("green time outside (0, cycle)");
  return green / cycle;
}

double saturation(double volume, double capacity) {
  if (!(capacity > 0.0)) throw std::domain_error("capacity must be positive");
  if (!(volume >= 0.0)) throw std::domain_error("volume must be nonnegative");
  return volume / capacity;
}

double hcm_delay(double cycle, double lambda, double x) {
  if (!(cycle > 0.0)) throw std::domain_error("cycle must be positive");
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::domain_error("green ratio outside (0, 1)");
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("saturation must be nonnegative");

  const double lx = std::min(lambda * x, kMaxGreenSaturation);
  const double uniform = 0.38 * cycle * (1.0 - lambda) * (1.0 - lambda) / (1.0 - lx);
  const double xm1 = x - 1.0;
  const double incremental = 173.0 * x * x * (xm1 + std::sqrt(xm1 * xm1 + 16.0 * x / cycle));
  return uniform + incremental;
}

DelayResult intersection_delay(const ApproachState& ns, const ApproachState& we, const PhaseSchedule& schedule) {
  const double C = schedule.cycle();
  DelayResult out;
  out.ns = hcm_delay(C, green_ratio(schedule.green_ns(), C), saturation(ns.volume, ns.capacity));
  out.we = hcm_delay(C, green_ratio(schedule.green_we(), C), saturation(we.volume, we.capacity));
  const double total = ns.volume + we.volume;
  out.intersection = total > 0.0 ? (out.ns * ns.volume + out.we * we.volume) / total : 0.0;
  return out;
}

}  // namespace crossfire::traffic
