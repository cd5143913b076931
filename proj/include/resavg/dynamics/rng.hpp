#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace resavg {

// Identifier recorded in every output that depends on random draws.
inline constexpr const char* kRngAlgorithm = "philox4x32-10+box-muller/v1";

// Philox4x32 with 10 rounds (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Identifies one independent noise substream. Domains separate families of
// trajectories that must never share draws (e.g. full runs vs. the effective
// reference ensemble).
struct NoiseStream {
  std::uint64_t seed = 0;
  std::uint32_t trajectory = 0;
  std::uint32_t domain = 0;
};

// Complex Wiener increments over one step of length h.
//
// Convention: dbeta = dbeta_+ + i dbeta_- with independent real parts of
// variance h each, so E|dbeta|^2 = 2h. Every formula that involves b_k^2
// (Ito drift, OU stationary variance b^2/gamma) depends on this factor 2.
struct WienerIncrement {
  double h = 0.0;
  std::vector<std::complex<double>> dbeta;
};

// Fills out[j] for modes j = 0..out.size()-1 from the counter
// (mode | domain << 24, step, trajectory) under key = seed. Results depend
// only on the arguments, never on call order.
void draw_increments(const NoiseStream& stream, std::uint64_t step, double h,
                     std::span<std::complex<double>> out);

WienerIncrement wiener_increment(const NoiseStream& stream, std::uint64_t step, double h,
                                 std::size_t modes);

}  // namespace resavg
