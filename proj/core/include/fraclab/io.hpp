#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace fraclab {

// 17-significant-digit shortest faithful decimal, '.' separator.
std::string format_float(double v);

// Runs one subcommand against a JSON config and writes its report files into
// outdir. Returns the process exit code: 0 success, 2 validation error,
// 3 no convergence, 4 I/O error. Diagnostics go to diag as single lines.
int run_subcommand(const std::string& subcommand, const std::string& config_path,
                   const std::string& outdir, std::optional<uint64_t> seed_override,
                   int threads, std::ostream& diag);

}  // namespace fraclab
