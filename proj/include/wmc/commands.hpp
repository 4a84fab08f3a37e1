#pragma once

// Subcommands of the wmc tool. Each returns a process exit code and writes its
// human-readable report to out and diagnostics to err.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "wmc/formats.hpp"

namespace wmc::cli {

enum ExitCode : int { kSuccess = 0, kClaimViolation = 1, kInputError = 2, kResourceGuard = 3 };

/// The two mod-6 weightings with their factored polynomials.
io::WeightingFile bundled_weighting(int which);

/// Default generic window shift (e/10, pi/10) * rho.
double default_tau_x(double rho);
double default_tau_y(double rho);

struct VerifyPeriodicOptions {
    std::optional<std::filesystem::path> weights_a;  // bundled ws1 when empty
    std::optional<std::filesystem::path> weights_b;  // bundled ws2 when empty
    int n_max = 5;
    /// Claimed highest n with equal tables; the weightings must differ at
    /// expect_equal_through + 1 when that is <= n_max.
    int expect_equal_through = 4;
    std::optional<std::filesystem::path> out_dir;
    unsigned threads = 0;
};

struct GenPatchOptions {
    double radius = 60.0;
    double margin = 6.0;
    double rho = 1.0;
    std::optional<double> tau_x;
    std::optional<double> tau_y;
    std::filesystem::path out = "patch.csv";
    unsigned threads = 0;
};

struct CorrelateOptions {
    std::filesystem::path patch;
    std::optional<std::filesystem::path> weights_a;
    std::optional<std::filesystem::path> weights_b;
    int n_max = 5;
    std::string tuples = "auto";
    int auto_count = 10;
    std::uint64_t seed = 1;
    std::optional<std::filesystem::path> out;
    unsigned threads = 0;
};

struct ThinOptions {
    std::filesystem::path patch;
    std::filesystem::path probs;
    std::uint64_t seed = 1;
    std::filesystem::path out = "realization.csv";
};

struct RenderOptions {
    std::filesystem::path patch;
    std::filesystem::path out = "patch.svg";
    std::string palette = "mono";
};

struct PipelineOptions {
    double radius = 60.0;
    double margin = 6.0;
    double rho = 1.0;
    std::optional<double> tau_x;
    std::optional<double> tau_y;
    std::uint64_t seed = 1;
    int thinning_seeds = 100;
    std::optional<std::filesystem::path> weights_a;
    std::optional<std::filesystem::path> weights_b;
    std::filesystem::path out_dir = "wmc_out";
    unsigned threads = 0;
};

int cmd_verify_periodic(const VerifyPeriodicOptions& opt, std::ostream& out, std::ostream& err);
int cmd_gen_patch(const GenPatchOptions& opt, std::ostream& out, std::ostream& err);
int cmd_correlate(const CorrelateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_thin(const ThinOptions& opt, std::ostream& out, std::ostream& err);
int cmd_render_svg(const RenderOptions& opt, std::ostream& out, std::ostream& err);
int cmd_full_pipeline(const PipelineOptions& opt, std::ostream& out, std::ostream& err);

/// Maps the library's exception types onto exit codes, printing the message.
int exit_code_for_current_exception(std::ostream& err);

}  // namespace wmc::cli
