// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpue/group.hpp"

namespace gpue::cli {

inline constexpr const char* kSchemaVersion = "gpue-1";

enum ExitCode : int {
    kExitSuccess = 0,
    kExitCheckFailure = 1,
    kExitUsage = 2,
    kExitIo = 3,
    kExitNonConvergence = 4,
};

enum class Command { verify, sample, spacing, density, jpdf_check, bessel };
enum class Format { csv, json };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::verify;
    double sigma = 1.0;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    int bins = 100;
    /// Histogram upper edge; defaults to 5 sigma (in units of <S> with unit_mean).
    std::optional<double> smax;
    /// Output path; empty means standard output.
    std::string out;
    Format format = Format::csv;
    bool per_level = false;
    bool unit_mean = false;
    /// Fill the wigner_goe / wigner_gue overlay columns of the spacing CSV.
    bool wigner = false;
    unsigned workers = 1;
    /// Argument of the bessel command.
    double x = 1.0;

    /// Throws UsageError on non-positive sigma, bins, samples or smax.
    void validate() const;
};

/// GPUE_WORKERS if set to a positive integer, otherwise the hardware thread count.
unsigned default_workers();

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool overall_pass = false;

    const CheckResult* find(const std::string& name) const;
};

/// Test hooks for fault injection into the verification battery.
struct VerifyHooks {
    std::function<void(StructureConstants&)> perturb_structure_constants;
};

/// Runs the invariant battery of every module. Never throws for a failing
/// check: an exception inside a check marks it failed with an infinite residual.
VerifyReport run_verify(const RunConfig& cfg, const VerifyHooks& hooks = {});

nlohmann::ordered_json to_json(const VerifyReport& report);
VerifyReport verify_report_from_json(const nlohmann::json& j);

/// Command bodies. Data goes to `out`; human-readable summaries go to `log`.
/// Return the process exit code on success; throw on failure.
int run_verify_command(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int run_sample(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int run_spacing(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int run_density(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int run_jpdf_check(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int run_bessel(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Validates the config, opens cfg.out (or uses `out`), dispatches, and maps
/// exceptions onto exit codes: UsageError/DomainError -> 2, IoError -> 3,
/// ConvergenceError -> 4, any other failure -> 1.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Shortest C-locale representation with 17 significant digits.
std::string format_number(double v);

} // namespace gpue::cli
