#pragma once

// Test-only reference computations, written independently of the library.

#include <algorithm>
#include <array>
#include <cmath>

namespace oracle {

/// Delay formula evaluated in long double, grouping terms differently from the library.
inline double hcm_delay(double cycle, double lambda, double x) {
  const long double C = cycle, l = lambda, s = x;
  const long double lx = std::min<long double>(l * s, 0.99L);
  const long double g = 1.0L - l;
  const long double first = 0.38L * C * g * g / (1.0L - lx);
  const long double dev = s - 1.0L;
  const long double root = std::sqrt(dev * dev + 16.0L * s / C);
  const long double second = 173.0L * s * s * (dev + root);
  return static_cast<double>(first + second);
}

/// Two-state, two-action deterministic MDP. Action 0 stays, action 1 switches.
/// Rewards: r(0,0)=1, r(0,1)=0, r(1,0)=2, r(1,1)=-1.
struct ToyMdp {
  static constexpr int next(int s, int a) { return a == 0 ? s : 1 - s; }
  static constexpr double reward(int s, int a) {
    constexpr std::array<std::array<double, 2>, 2> r{{{1.0, 0.0}, {2.0, -1.0}}};
    return r[s][a];
  }
};

/// Q* by value iteration to a 1e-12 sup-norm fixed point.
inline std::array<std::array<double, 2>, 2> toy_q_star(double gamma) {
  std::array<std::array<double, 2>, 2> q{};
  for (int it = 0; it < 100000; ++it) {
    auto nq = q;
    double diff = 0.0;
    for (int s = 0; s < 2; ++s) {
      for (int a = 0; a < 2; ++a) {
        const int sn = ToyMdp::next(s, a);
        nq[s][a] = ToyMdp::reward(s, a) + gamma * std::max(q[sn][0], q[sn][1]);
        diff = std::max(diff, std::abs(nq[s][a] - q[s][a]));
      }
    }
    q = nq;
    if (diff < 1e-12) break;
  }
  return q;
}

}  // namespace oracle
