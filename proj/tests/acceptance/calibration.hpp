#pragma once

#include <cstddef>

// Pilot-calibrated constants. Produced by `acceptance_pilot` (default
// arguments) on configs/square_2d.ini; rerun it after changing that file.

// Aggregate KS distance between two independent effective ensembles of the
// sweep setting (M = 256, times 0.5, 1, 1.5, 2), 40 replicate seed pairs.
inline constexpr double kNoiseFloorMean = 0.074625;
inline constexpr double kNoiseFloorWidth = 0.003022;  // standard deviation

// 99% quantile of the Kuiper statistic of n = 256 independent uniform angles,
// 20000 Monte Carlo replicates. Used as the uniform acceptance threshold.
inline constexpr double kKuiperUniformThreshold = 0.123494;

// Noiseless conservation check: scale of the random initial state.
inline constexpr double kC5Amplitude = 0.25;

// Long effective run for the balance identities.
inline constexpr double kC11BurnIn = 20.0;
inline constexpr double kC11Horizon = 200.0;
inline constexpr double kC11SampleEvery = 0.1;
inline constexpr std::size_t kC11Trajectories = 32;
