// Copyright 2026 The wfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WF_CLI_H
#define WF_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wf/channel.h"
#include "wf/scenarios.h"
#include "wf/validate.h"

namespace wf::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitUsage = 2,
    kExitInvalidInput = 3,
    kExitIo = 4,
};

enum class Command { kSimple, kSweepSimple, kChsh, kSweepChsh, kValidate };
enum class OutputFormat { kCsv, kJson };

/// Malformed command line or values (exit 2).
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// --help was given; what() is the help text.
class HelpRequested : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Well-formed but physically invalid input, e.g. unnormalized amplitudes
/// (exit 3).
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Output could not be written (exit 4).
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Amplitude pair given as moduli and phases. An omitted modulus is filled
/// in from the other so the pair is normalized; both omitted means 1/sqrt2
/// each.
struct AmplitudePair {
    std::optional<double> first_mod;
    double first_phase = 0.0;
    std::optional<double> second_mod;
    double second_phase = 0.0;
};

struct RunConfig {
    Command command = Command::kSimple;
    AmplitudePair source;
    AmplitudePair wigner;
    std::optional<double> theta;
    double phi = 0.0;
    std::size_t grid = kDefaultGridPoints;
    std::string out = "-";
    OutputFormat format = OutputFormat::kCsv;
    std::uint64_t seed = kDefaultSeed;
    std::size_t trials = kDefaultTrials;
};

/// Normalization tolerance for amplitudes typed on the command line.
inline constexpr double kInputNormTolerance = 1e-9;

/// Parses `args` (without the program name). Throws UsageError,
/// CLI::ParseError or HelpRequested.
RunConfig parse_args(std::span<const std::string> args);

/// Throws UsageError for malformed values, InputError when |x|^2 + |y|^2
/// misses 1 by more than kInputNormTolerance. The result is renormalized.
std::pair<Complex, Complex> resolve_pair(const AmplitudePair &pair, const char *name);
SourceAmplitudes source_from(const RunConfig &cfg);
WignerBasis basis_from(const RunConfig &cfg);

/// Fixed-point with 12 digits after the point, '.' separator, no locale,
/// and no negative zero.
std::string format_number(double x);

/// Empty, text or number.
using Cell = std::variant<std::monostate, std::string, double>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Header row plus one line per row, RFC-4180 quoting where needed.
    std::string to_csv() const;
    /// {"format": 1, "command": ..., "columns": [...], "rows": [{...}]}.
    std::string to_json() const;
};

Table cmd_simple(const RunConfig &cfg);
Table cmd_sweep_simple(const RunConfig &cfg);
Table cmd_chsh(const RunConfig &cfg);
Table cmd_sweep_chsh(const RunConfig &cfg);

/// Writes the report and returns kExitOk or kExitValidationFailed.
int cmd_validate(const RunConfig &cfg, std::ostream &out, const ClosedForms &forms = ClosedForms::reference());

/// Full command-line entry point; never throws.
int run(std::span<const std::string> args, std::ostream &out, std::ostream &err);

}  // namespace wf::cli

#endif
