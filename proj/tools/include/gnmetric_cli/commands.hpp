#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace gnmetric::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;

struct CommonOpts {
  std::filesystem::path config_path;
  std::optional<std::string> out_path;       // overrides the config output path
  std::optional<std::uint64_t> seed_override;
};

int cmd_check_axioms(const CommonOpts& opts, const std::string& which);
int cmd_solve(const CommonOpts& opts, int theorem);
int cmd_analyze(const CommonOpts& opts, const std::string& analysis);
int cmd_derive_metric(const CommonOpts& opts);

}  // namespace gnmetric::cli
