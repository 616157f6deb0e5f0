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

#include "wf/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "wf/friendliness.h"

namespace wf::cli {

namespace {

struct RawOptions {
    std::int64_t grid = static_cast<std::int64_t>(kDefaultGridPoints);
    std::int64_t trials = static_cast<std::int64_t>(kDefaultTrials);
    std::string format = "csv";
};

void add_source_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--alpha-mod", cfg.source.first_mod, "|alpha| of the source amplitude on |0>");
    sub->add_option("--alpha-phase", cfg.source.first_phase, "arg(alpha) in radians");
    sub->add_option("--beta-mod", cfg.source.second_mod, "|beta| of the source amplitude on |1>");
    sub->add_option("--beta-phase", cfg.source.second_phase, "arg(beta) in radians");
    sub->add_option("--a-mod", cfg.wigner.first_mod, "|a| of Wigner's basis ket |1> = a|00> + b|11>");
    sub->add_option("--a-phase", cfg.wigner.first_phase, "arg(a) in radians");
    sub->add_option("--b-mod", cfg.wigner.second_mod, "|b| of Wigner's basis ket");
    sub->add_option("--b-phase", cfg.wigner.second_phase, "arg(b) in radians");
}

void add_output_options(CLI::App *sub, RunConfig &cfg, RawOptions &raw) {
    sub->add_option("--out", cfg.out, "output file, '-' for standard output");
    sub->add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void require_finite(double x, const char *name) {
    if (!std::isfinite(x)) {
        throw UsageError(std::string(name) + " must be a finite number");
    }
}

void quote_csv(std::string &out, const std::string &field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char ch : field) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    out += '"';
}

void write_output(const std::string &path, const std::string &text, std::ostream &out) {
    if (path == "-") {
        out << text;
        out.flush();
        if (!out) {
            throw IoError("failed to write to standard output");
        }
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open output file '" + path + "'");
    }
    file << text;
    file.close();
    if (!file) {
        throw IoError("failed to write output file '" + path + "'");
    }
}

std::vector<std::string> message_labels() { return message_axis().labels; }

}  // namespace

// ---------------------------------------------------------------------------
// Argument parsing

RunConfig parse_args(std::span<const std::string> args) {
    RunConfig cfg;
    RawOptions raw;

    CLI::App app{"Wigner's-friend simulator with a classical channel between friend and superobserver", "wfsim"};
    app.require_subcommand(1);

    auto *simple = app.add_subcommand("simple", "collapse and unitary predictions, optionally p(w,n) for a channel");
    add_source_options(simple, cfg);
    simple->add_option("--theta", cfg.theta, "channel theta in radians");
    simple->add_option("--phi", cfg.phi, "channel phi in radians");
    add_output_options(simple, cfg, raw);

    auto *sweep_simple = app.add_subcommand("sweep-simple", "p(w|n) along a theta grid on [0, pi]");
    add_source_options(sweep_simple, cfg);
    sweep_simple->add_option("--phi", cfg.phi, "channel phi in radians");
    sweep_simple->add_option("--grid", raw.grid, "number of theta samples (>= 2)");
    add_output_options(sweep_simple, cfg, raw);

    auto *chsh = app.add_subcommand("chsh", "CHSH values without records, with records, and per message");
    chsh->add_option("--theta", cfg.theta, "channel theta in radians (default 0)");
    chsh->add_option("--phi", cfg.phi, "channel phi in radians");
    add_output_options(chsh, cfg, raw);

    auto *sweep_chsh = app.add_subcommand("sweep-chsh", "conditional CHSH values along a theta grid on [0, pi]");
    sweep_chsh->add_option("--phi", cfg.phi, "channel phi in radians");
    sweep_chsh->add_option("--grid", raw.grid, "number of theta samples (>= 2)");
    add_output_options(sweep_chsh, cfg, raw);

    auto *validate = app.add_subcommand("validate", "cross-check closed forms against the brute-force oracle");
    validate->add_option("--seed", cfg.seed, "PRNG seed");
    validate->add_option("--trials", raw.trials, "number of random configurations (>= 1)");
    add_output_options(validate, cfg, raw);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        for (const auto *sub : app.get_subcommands()) {
            throw HelpRequested(sub->help());
        }
        throw HelpRequested(app.help());
    }

    if (simple->parsed()) {
        cfg.command = Command::kSimple;
    } else if (sweep_simple->parsed()) {
        cfg.command = Command::kSweepSimple;
    } else if (chsh->parsed()) {
        cfg.command = Command::kChsh;
    } else if (sweep_chsh->parsed()) {
        cfg.command = Command::kSweepChsh;
    } else {
        cfg.command = Command::kValidate;
    }

    require_finite(cfg.phi, "--phi");
    if (cfg.theta) {
        require_finite(*cfg.theta, "--theta");
    }
    if (raw.grid < 2) {
        throw UsageError("--grid must be at least 2");
    }
    cfg.grid = static_cast<std::size_t>(raw.grid);
    if (raw.trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    cfg.trials = static_cast<std::size_t>(raw.trials);
    cfg.format = raw.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    if (cfg.out.empty()) {
        throw UsageError("--out must not be empty");
    }
    return cfg;
}

std::pair<Complex, Complex> resolve_pair(const AmplitudePair &pair, const char *name) {
    const std::string what(name);
    for (auto m : {pair.first_mod, pair.second_mod}) {
        if (m && (!std::isfinite(*m) || *m < 0.0)) {
            throw UsageError(what + ": moduli must be finite and non-negative");
        }
    }
    require_finite(pair.first_phase, (what + " phase").c_str());
    require_finite(pair.second_phase, (what + " phase").c_str());

    auto complement = [&](double m) {
        if (m * m > 1.0 + kInputNormTolerance) {
            throw InputError(what + ": modulus " + std::to_string(m) + " exceeds 1");
        }
        return std::sqrt(std::max(0.0, 1.0 - m * m));
    };

    double m1 = 0.0, m2 = 0.0;
    if (pair.first_mod && pair.second_mod) {
        m1 = *pair.first_mod;
        m2 = *pair.second_mod;
    } else if (pair.first_mod) {
        m1 = *pair.first_mod;
        m2 = complement(m1);
    } else if (pair.second_mod) {
        m2 = *pair.second_mod;
        m1 = complement(m2);
    } else {
        m1 = m2 = 1.0 / std::numbers::sqrt2;
    }
    double norm2 = m1 * m1 + m2 * m2;
    if (std::abs(norm2 - 1.0) > kInputNormTolerance) {
        throw InputError(what + ": squared moduli sum to " + format_number(norm2) + ", expected 1");
    }
    double scale = 1.0 / std::sqrt(norm2);
    return {std::polar(m1 * scale, pair.first_phase), std::polar(m2 * scale, pair.second_phase)};
}

SourceAmplitudes source_from(const RunConfig &cfg) {
    auto [alpha, beta] = resolve_pair(cfg.source, "source (alpha, beta)");
    return SourceAmplitudes(alpha, beta);
}

WignerBasis basis_from(const RunConfig &cfg) {
    auto [a, b] = resolve_pair(cfg.wigner, "Wigner basis (a, b)");
    return WignerBasis(a, b);
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_number(double x) {
    if (!std::isfinite(x)) {
        throw InvariantError("format_number: non-finite value");
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 12);
    std::string s(buf, res.ptr);
    if (s == "-0.000000000000") {
        s.erase(0, 1);
    }
    return s;
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) {
            out += ',';
        }
        quote_csv(out, columns[c]);
    }
    out += '\n';
    for (const auto &row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) {
                out += ',';
            }
            if (const auto *s = std::get_if<std::string>(&row[c])) {
                quote_csv(out, *s);
            } else if (const auto *d = std::get_if<double>(&row[c])) {
                out += format_number(*d);
            }
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    nlohmann::ordered_json doc;
    doc["format"] = 1;
    doc["command"] = command;
    doc["columns"] = columns;
    auto rows_json = nlohmann::ordered_json::array();
    for (const auto &row : rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const auto *s = std::get_if<std::string>(&row[c])) {
                r[columns[c]] = *s;
            } else if (const auto *d = std::get_if<double>(&row[c])) {
                // Same digits as the CSV rendering.
                r[columns[c]] = std::stod(format_number(*d));
            } else {
                r[columns[c]] = nullptr;
            }
        }
        rows_json.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows_json);
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Commands

Table cmd_simple(const RunConfig &cfg) {
    const auto src = source_from(cfg);
    const auto wb = basis_from(cfg);
    Table t{"simple", {"quantity", "w", "n", "theta", "phi", "value"}, {}};
    const auto w_labels = wigner_axis().labels;

    auto add = [&](const char *quantity, const OutcomeDistribution &d) {
        for (std::size_t w = 0; w < w_labels.size(); ++w) {
            t.rows.push_back({std::string(quantity), w_labels[w], std::monostate{}, std::monostate{},
                              std::monostate{}, d.at({w})});
        }
    };
    add("p_friend", collapse_probs(src, wb));
    add("p_wigner", unitary_probs(src, wb));

    if (cfg.theta) {
        const ChannelParams params(*cfg.theta, cfg.phi);
        const auto joint = joint_probs_wn(src, wb, params);
        const auto p_n = joint.marginal("n");
        const auto n_labels = message_labels();
        for (std::size_t w = 0; w < w_labels.size(); ++w) {
            for (std::size_t n = 0; n < n_labels.size(); ++n) {
                t.rows.push_back({std::string("p_joint"), w_labels[w], n_labels[n], params.theta(), params.phi(),
                                  joint.at({w, n})});
            }
        }
        for (std::size_t n = 0; n < n_labels.size(); ++n) {
            t.rows.push_back(
                {std::string("p_message"), std::monostate{}, n_labels[n], params.theta(), params.phi(), p_n.at({n})});
        }
        for (std::size_t n = 0; n < n_labels.size(); ++n) {
            const auto cond = joint.conditioned_on("n", n);
            for (std::size_t w = 0; w < w_labels.size(); ++w) {
                t.rows.push_back({std::string("p_conditional"), w_labels[w], n_labels[n], params.theta(),
                                  params.phi(), cond.at({w})});
            }
        }
    }
    return t;
}

Table cmd_sweep_simple(const RunConfig &cfg) {
    const auto src = source_from(cfg);
    const auto wb = basis_from(cfg);
    Table t{"sweep-simple",
            {"theta", "phi", "p_w1_given_n0", "p_w2_given_n0", "p_w1_given_n1", "p_w2_given_n1", "p_n0"},
            {}};
    const auto grid = uniform_theta_grid(cfg.grid);
    for (const auto &row : sweep_partial_collapse(src, wb, cfg.phi, grid)) {
        t.rows.push_back({row.theta, row.phi, row.p_w_given_n[0][0], row.p_w_given_n[0][1], row.p_w_given_n[1][0],
                          row.p_w_given_n[1][1], row.p_n[0]});
    }
    return t;
}

Table cmd_chsh(const RunConfig &cfg) {
    const ChannelParams params(cfg.theta.value_or(0.0), cfg.phi);
    Table t{"chsh", {"quantity", "n", "theta", "phi", "value"}, {}};
    const std::monostate none;

    t.rows.push_back({std::string("chsh_no_record"), none, none, none,
                      chsh_value(DensityMatrix::pure(extended_state()))});
    t.rows.push_back({std::string("chsh_record"), none, none, none,
                      chsh_value(partial_trace(DensityMatrix::pure(extended_record_state()), labels::kRecord))});

    const auto rho = channel_extended_state(params);
    const auto n_labels = message_labels();
    for (auto n : {MessageOutcome::kZero, MessageOutcome::kOne}) {
        t.rows.push_back({std::string("chsh_conditional"), n_labels[index(n)], params.theta(), params.phi(),
                          conditional_chsh(n, params).value});
    }
    t.rows.push_back({std::string("chsh_unconditioned"), none, params.theta(), params.phi(), chsh_value(rho)});
    for (auto n : {MessageOutcome::kZero, MessageOutcome::kOne}) {
        t.rows.push_back({std::string("p_message"), n_labels[index(n)], params.theta(), params.phi(),
                          message_probability(rho, n, params)});
    }
    return t;
}

Table cmd_sweep_chsh(const RunConfig &cfg) {
    Table t{"sweep-chsh", {"theta", "phi", "chsh_n0", "chsh_n1", "chsh_unconditioned"}, {}};
    const auto grid = uniform_theta_grid(cfg.grid);
    const auto rows = sweep_chsh(cfg.phi, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto &r0 = rows[2 * k];
        const auto &r1 = rows[2 * k + 1];
        t.rows.push_back({r0.theta, r0.phi, r0.value, r1.value, unconditioned_chsh(ChannelParams(r0.theta, r0.phi))});
    }
    return t;
}

int cmd_validate(const RunConfig &cfg, std::ostream &out, const ClosedForms &forms) {
    if (cfg.trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    const auto report = cross_validate(cfg.seed, cfg.trials, forms);
    if (cfg.format == OutputFormat::kJson) {
        nlohmann::ordered_json doc;
        doc["format"] = 1;
        doc["command"] = "validate";
        doc["seed"] = report.seed;
        doc["trials"] = report.trials;
        doc["threshold"] = kValidationThreshold;
        doc["max_deviation"] = report.max_deviation();
        doc["passed"] = report.passed();
        auto worst = nlohmann::ordered_json::array();
        for (const auto &w : report.worst) {
            worst.push_back({{"quantity", w.quantity}, {"deviation", w.deviation}, {"trial", w.trial},
                             {"config", w.config}});
        }
        doc["worst"] = std::move(worst);
        out << doc.dump(2) << "\n";
    } else {
        report.write_text(out);
    }
    return report.passed() ? kExitOk : kExitValidationFailed;
}

int run(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
    try {
        RunConfig cfg;
        try {
            cfg = parse_args(args);
        } catch (const HelpRequested &e) {
            out << e.what();
            return kExitOk;
        } catch (const CLI::ParseError &e) {
            err << "wfsim: " << e.what() << "\n";
            return kExitUsage;
        }

        if (cfg.command == Command::kValidate) {
            std::ostringstream report;
            int code = cmd_validate(cfg, report, ClosedForms::reference());
            write_output(cfg.out, report.str(), out);
            return code;
        }

        Table table;
        switch (cfg.command) {
            case Command::kSimple:
                table = cmd_simple(cfg);
                break;
            case Command::kSweepSimple:
                table = cmd_sweep_simple(cfg);
                break;
            case Command::kChsh:
                table = cmd_chsh(cfg);
                break;
            case Command::kSweepChsh:
                table = cmd_sweep_chsh(cfg);
                break;
            case Command::kValidate:
                break;
        }
        write_output(cfg.out, cfg.format == OutputFormat::kJson ? table.to_json() : table.to_csv(), out);
        return kExitOk;
    } catch (const UsageError &e) {
        err << "wfsim: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError &e) {
        err << "wfsim: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const InvariantError &e) {
        err << "wfsim: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const IoError &e) {
        err << "wfsim: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        err << "wfsim: internal error: " << e.what() << "\n";
        return kExitValidationFailed;
    }
}

}  // namespace wf::cli
