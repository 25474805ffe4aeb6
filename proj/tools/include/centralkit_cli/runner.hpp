#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>

#include "centralkit/config.hpp"

namespace centralkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitBattery = 3;

/// Executes a validated config, writing CSV files and companion gnuplot
/// scripts into `out_dir`. Progress and battery lines go to `log`. Solver
/// failures propagate as exceptions; the return value is the exit code for
/// everything else.
int run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log,
        std::size_t threads = 1);

/// Thread cap from CENTRALKIT_THREADS, defaulting to the hardware count.
std::size_t thread_budget();

}  // namespace centralkit::cli
