#pragma once

// HCM-style delay model for a two-phase intersection (NS and WE approaches).

namespace crossfire::traffic {

inline constexpr double kDefaultCycle = 100.0;      // s
inline constexpr double kDefaultCapacity = 3500.0;  // veh/h
inline constexpr double kMaxGreenSaturation = 0.99; // upper clamp on lambda * x

struct ApproachState {
  double volume = 0.0;                  // veh/h
  double capacity = kDefaultCapacity;   // veh/h
};

/// Two-phase split of one cycle. Construct through make(); the WE green is T - NS green.
class PhaseSchedule {
 public:
  static PhaseSchedule make(double cycle, double green_ns);

  double cycle() const noexcept { return cycle_; }
  double green_ns() const noexcept { return green_ns_; }
  double green_we() const noexcept { return cycle_ - green_ns_; }

 private:
  PhaseSchedule(double cycle, double green_ns) : cycle_(cycle), green_ns_(green_ns) {}
  double cycle_;
  double green_ns_;
};

struct DelayResult {
  double ns = 0.0;            // s
  double we = 0.0;            // s
  double intersection = 0.0;  // volume-weighted, s
};

/// g / C; throws std::domain_error unless 0 < g < C.
double green_ratio(double green, double cycle);

/// v / c; throws std::domain_error for c <= 0 or v < 0.
double saturation(double volume, double capacity);

/// Average approach delay in seconds. lambda * x is clamped to kMaxGreenSaturation in the
/// uniform-delay denominator. Throws std::domain_error for C <= 0, lambda outside (0,1), x < 0.
double hcm_delay(double cycle, double lambda, double x);

DelayResult intersection_delay(const ApproachState& ns, const ApproachState& we, const PhaseSchedule& schedule);

}  // namespace crossfire::traffic
