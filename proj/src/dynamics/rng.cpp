#include "resavg/dynamics/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace resavg {

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

namespace {

// Uniform on the open interval (0, 1) from 53 random bits.
double open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

void draw_increments(const NoiseStream& stream, std::uint64_t step, double h,
                     std::span<std::complex<double>> out) {
  if (out.size() >= (1u << 24)) throw std::length_error("too many modes for the noise counter");
  if (stream.domain >= 256) throw std::invalid_argument("noise domain must be < 256");
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(stream.seed),
                                         static_cast<std::uint32_t>(stream.seed >> 32)};
  const double scale = std::sqrt(h);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(j) | (stream.domain << 24), static_cast<std::uint32_t>(step),
        static_cast<std::uint32_t>(step >> 32), stream.trajectory};
    const auto r = philox4x32_10(ctr, key);
    const double u1 = open_unit(r[0], r[1]);
    const double u2 = open_unit(r[2], r[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[j] = {scale * radius * std::cos(angle), scale * radius * std::sin(angle)};
  }
}

WienerIncrement wiener_increment(const NoiseStream& stream, std::uint64_t step, double h,
                                 std::size_t modes) {
  WienerIncrement inc;
  inc.h = h;
  inc.dbeta.resize(modes);
  draw_increments(stream, step, h, inc.dbeta);
  return inc;
}

}  // namespace resavg
