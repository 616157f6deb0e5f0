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

#include "wf/validate.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "wf/oracle.h"

namespace wf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_complex(Complex z) {
    std::ostringstream ss;
    ss << std::setprecision(17) << "(" << z.real() << "," << z.imag() << ")";
    return ss.str();
}

oracle::SimpleSetup simple_setup(const RandomCase &c, oracle::RecordKind record, bool with_channel) {
    oracle::SimpleSetup s{c.src.alpha(), c.src.beta(), c.wb.a(), c.wb.b(), record, std::nullopt};
    if (with_channel) {
        s.channel = oracle::ChannelAngles{c.params.theta(), c.params.phi()};
    }
    return s;
}

// Unlike std::max, a NaN deviation wins and stays.
bool exceeds(double candidate, double current) { return !std::isnan(current) && !(candidate <= current); }
double worse(double a, double b) { return exceeds(b, a) ? b : a; }

OutcomeDistribution pipeline(const oracle::SimpleSetup &setup) {
    auto steps = oracle::simple_pipeline(setup);
    return oracle::run_pipeline(steps);
}

}  // namespace

std::string RandomCase::describe() const {
    std::ostringstream ss;
    ss << std::setprecision(17) << "alpha=" << format_complex(src.alpha()) << " beta=" << format_complex(src.beta())
       << " a=" << format_complex(wb.a()) << " b=" << format_complex(wb.b()) << " theta=" << params.theta()
       << " phi=" << params.phi();
    return ss.str();
}

double CaseGenerator::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

RandomCase CaseGenerator::next() {
    auto pair = [this]() {
        double u = uniform();
        double gamma = kTwoPi * uniform();
        double delta = kTwoPi * uniform();
        return std::pair{std::polar(std::sqrt(1.0 - u), gamma), std::polar(std::sqrt(u), gamma + delta)};
    };
    auto [alpha, beta] = pair();
    auto [a, b] = pair();
    double theta = std::numbers::pi * uniform();
    double phi = kTwoPi * uniform();
    return {SourceAmplitudes(alpha, beta), WignerBasis(a, b), ChannelParams(theta, phi)};
}

ClosedForms ClosedForms::reference() {
    return {collapse_probs, unitary_probs_closed_form, record_joint_probs_closed_form, joint_probs_wn_closed_form,
            [](MessageOutcome n, const ChannelParams &p) { return conditional_chsh_closed_form(n, p); }};
}

std::vector<Deviation> check_case(const RandomCase &c, const ClosedForms &forms) {
    using oracle::RecordKind;
    std::vector<Deviation> out;

    const auto no_record = pipeline(simple_setup(c, RecordKind::kNone, false));
    const auto trivial = pipeline(simple_setup(c, RecordKind::kTrivial, false));
    const auto recorded = pipeline(simple_setup(c, RecordKind::kWhichOutcome, false));
    const auto channelled = pipeline(simple_setup(c, RecordKind::kWhichOutcome, true));
    const auto recorded_w = recorded.marginal("w");

    out.push_back({"unitary_probs closed form vs pipeline", forms.unitary(c.src, c.wb).max_abs_diff(no_record)});
    out.push_back({"unitary_probs vs pipeline", unitary_probs(c.src, c.wb).max_abs_diff(no_record)});
    out.push_back({"trivial_record_probs vs pipeline", trivial_record_probs(c.src, c.wb).max_abs_diff(trivial)});
    out.push_back({"collapse_probs vs record-marginalized pipeline", forms.collapse(c.src, c.wb).max_abs_diff(recorded_w)});
    out.push_back({"record_joint_probs closed form vs pipeline", forms.record_joint(c.src, c.wb).max_abs_diff(recorded)});
    out.push_back({"record_joint_probs vs pipeline", record_joint_probs(c.src, c.wb).max_abs_diff(recorded)});
    out.push_back(
        {"joint_probs_wn closed form vs pipeline", forms.joint_wn(c.src, c.wb, c.params).max_abs_diff(channelled)});
    out.push_back({"joint_probs_wn vs pipeline", joint_probs_wn(c.src, c.wb, c.params).max_abs_diff(channelled)});
    out.push_back({"sum_n joint_probs_wn vs collapse_probs",
                   joint_probs_wn(c.src, c.wb, c.params).marginal("w").max_abs_diff(forms.collapse(c.src, c.wb))});

    auto enumeration = oracle::collapse_enumeration(c.src.alpha(), c.src.beta(), c.wb.a(), c.wb.b());
    out.push_back({"collapse enumeration vs record-marginalized pipeline",
                   enumeration.leaves().marginal("w").max_abs_diff(recorded_w)});

    const auto oracle_chsh = oracle::chsh(true, oracle::ChannelAngles{c.params.theta(), c.params.phi()});
    double closed_dev = 0.0, model_dev = 0.0;
    for (auto n : {MessageOutcome::kZero, MessageOutcome::kOne}) {
        double reference = oracle_chsh.by_message[index(n)];
        closed_dev = worse(closed_dev, std::abs(forms.conditional_chsh(n, c.params) - reference));
        model_dev = worse(model_dev, std::abs(conditional_chsh(n, c.params).value - reference));
    }
    out.push_back({"conditional_chsh closed form vs pipeline", closed_dev});
    out.push_back({"conditional_chsh vs pipeline", model_dev});
    out.push_back({"unconditioned_chsh vs pipeline", std::abs(unconditioned_chsh(c.params) - oracle_chsh.overall)});
    out.push_back({"message basis completeness", message_basis(c.params).completeness_deviation()});
    return out;
}

double ValidationReport::max_deviation() const {
    double worst_dev = 0.0;
    for (const auto &w : worst) {
        if (exceeds(w.deviation, worst_dev)) {
            worst_dev = w.deviation;
        }
    }
    return worst_dev;
}

void ValidationReport::write_text(std::ostream &out) const {
    out << "seed=" << seed << " trials=" << trials << "\n";
    for (const auto &w : worst) {
        out << "trial=" << w.trial << " config={" << w.config << "} quantity=\"" << w.quantity
            << "\" deviation=" << std::scientific << std::setprecision(3) << w.deviation << std::defaultfloat << "\n";
    }
    out << "max_deviation=" << std::scientific << std::setprecision(3) << max_deviation() << std::defaultfloat
        << " threshold=" << kValidationThreshold << " status=" << (passed() ? "PASS" : "FAIL") << "\n";
}

ValidationReport cross_validate(std::uint64_t seed, std::size_t trials, const ClosedForms &forms) {
    if (trials < 1) {
        throw LayoutError("cross_validate: trials must be at least 1");
    }
    ValidationReport report{seed, trials, {}};
    CaseGenerator gen(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        auto c = gen.next();
        auto devs = check_case(c, forms);
        if (report.worst.empty()) {
            for (const auto &d : devs) {
                report.worst.push_back({d.quantity, d.deviation, t, c.describe()});
            }
            continue;
        }
        for (std::size_t k = 0; k < devs.size(); ++k) {
            if (exceeds(devs[k].deviation, report.worst[k].deviation)) {
                report.worst[k] = {devs[k].quantity, devs[k].deviation, t, c.describe()};
            }
        }
    }
    return report;
}

}  // namespace wf
