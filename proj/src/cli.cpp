// Copyright 2026 The telexp Authors
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

#include "telexp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string_view>

#include "telexp/refpath.hpp"

namespace telexp::cli {
namespace {

using nlohmann::json;

std::vector<double> parse_number_list(const std::string& flag, const std::string& text,
                                      std::size_t expected) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string_view token(text.data() + start, comma - start);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() ||
            !std::isfinite(v)) {
            throw UsageError(flag + ": '" + std::string(token) + "' is not a finite number");
        }
        values.push_back(v);
        start = comma + 1;
    }
    if (values.size() != expected) {
        throw UsageError(flag + ": expected " + std::to_string(expected) +
                         " comma-separated numbers, got " + std::to_string(values.size()) +
                         " in '" + text + "'");
    }
    return values;
}

// Rescales to unit norm. Without `normalize` the vector must already be
// within kChannelNormTolerance of unit norm.
template <typename T>
void unit_normalize(const std::string& flag, const std::string& text, std::span<T> v,
                    bool normalize) {
    double s = 0.0;
    for (const auto& x : v) {
        s += std::norm(Amplitude(x));
    }
    if (s == 0.0) {
        throw UsageError(flag + ": '" + text + "' is the zero vector");
    }
    if (!normalize && std::abs(s - 1.0) > kChannelNormTolerance) {
        throw UsageError(flag + ": '" + text + "' has squared norm " + std::to_string(s) +
                         " (pass --normalize to rescale)");
    }
    const double n = std::sqrt(s);
    for (auto& x : v) {
        x /= n;
    }
}

double round15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

json complex_json(Amplitude a) { return json::array({round15(a.real()), round15(a.imag())}); }

json matrix_json(const Operator& op) {
    json rows = json::array();
    for (std::size_t r = 0; r < op.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < op.dim(); ++c) {
            row.push_back(complex_json(op(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json channel_json(const ChannelSpec& channel) {
    json out = json::array();
    for (double c : channel.coefficients()) {
        out.push_back(round15(c));
    }
    return out;
}

std::string complex_text(Amplitude a) {
    if (a.imag() == 0.0) {
        return num(a.real());
    }
    return num(a.real()) + (a.imag() < 0 ? "-" : "+") + num(std::abs(a.imag())) + "i";
}

std::string channel_text(const ChannelSpec& channel) {
    const auto& c = channel.coefficients();
    return "alpha=" + num(c[0]) + " beta=" + num(c[1]) + " gamma=" + num(c[2]) +
           " delta=" + num(c[3]);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Bell-basis expansion and probabilistic two-qubit teleportation"};
    app.name(argv.empty() ? "telexp" : argv.front());

    RunConfig config;
    std::string channel_text_arg = "0.5,0.5,0.5,0.5";
    std::string input_text_arg;
    std::string mode = "run-exhaustive";
    std::string format = "text";
    std::string out_path;
    std::int64_t trials = static_cast<std::int64_t>(config.trials);

    app.add_option("--channel", channel_text_arg,
                   "Channel coefficients alpha,beta,gamma,delta (nonnegative)");
    app.add_option("--input", input_text_arg,
                   "Input amplitudes as re,im pairs for a,b,c,d (default: random from --seed)");
    app.add_option("--mode", mode, "extract | verify | run-exhaustive | run-sampled")
        ->check(CLI::IsMember({"extract", "verify", "run-exhaustive", "run-sampled"}));
    app.add_option("--trials", trials, "Monte-Carlo trials (run-sampled)");
    app.add_option("--seed", config.seed, "64-bit seed for sampling and the default input");
    app.add_option("--format", format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_flag("--normalize", config.normalize, "Rescale channel and input to unit norm");
    app.add_option("--out", out_path, "Write output to this file instead of stdout");

    std::vector<const char*> raw;
    raw.reserve(argv.size());
    for (const auto& a : argv) {
        raw.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n" + app.help());
    }

    static const std::map<std::string, Mode> kModes{{"extract", Mode::Extract},
                                                    {"verify", Mode::Verify},
                                                    {"run-exhaustive", Mode::RunExhaustive},
                                                    {"run-sampled", Mode::RunSampled}};
    config.mode = kModes.at(mode);
    config.format = format == "structured" ? OutputFormat::Structured : OutputFormat::Text;
    if (!out_path.empty()) {
        config.out_path = out_path;
    }

    if (trials < 1) {
        throw UsageError("--trials: must be at least 1, got " + std::to_string(trials));
    }
    config.trials = static_cast<std::uint64_t>(trials);

    const auto channel = parse_number_list("--channel", channel_text_arg, 4);
    for (double c : channel) {
        if (c < 0.0) {
            throw UsageError("--channel: coefficient " + num(c) + " is negative");
        }
    }
    std::copy(channel.begin(), channel.end(), config.channel.begin());
    unit_normalize("--channel", channel_text_arg, std::span<double>(config.channel),
                   config.normalize);

    if (!input_text_arg.empty()) {
        const auto flat = parse_number_list("--input", input_text_arg, 8);
        std::array<Amplitude, 4> amps{};
        for (std::size_t k = 0; k < 4; ++k) {
            amps[k] = {flat[2 * k], flat[2 * k + 1]};
        }
        unit_normalize("--input", input_text_arg, std::span<Amplitude>(amps), config.normalize);
        config.input = amps;
    }
    return config;
}

ChannelSpec resolve_channel(const RunConfig& config) { return ChannelSpec(config.channel); }

InputState resolve_input(const RunConfig& config) {
    if (config.input) {
        return InputState(*config.input);
    }
    Rng rng(derive_seed(config.seed, 0x1a7e));
    return random_input(rng);
}

std::vector<Check> verify_all(const ChannelSpec& channel, const InputState& input,
                              std::uint64_t seed) {
    std::vector<Check> checks;
    const auto table = sigma_table(channel);

    {
        Check c{"tabulated_closed_forms", 0.0, kAmplitudeTolerance, true, ""};
        int mismatches = 0;
        for (const auto& s : table) {
            const double d = max_abs_diff(s.matrix, tabulated_sigma(channel, s.i, s.j));
            if (d > kAmplitudeTolerance) {
                ++mismatches;
                c.detail += (c.detail.empty() ? "" : " ") + std::to_string(s.i) +
                            std::to_string(s.j);
            }
        }
        c.value = mismatches;
        c.pass = mismatches == 0;
        c.detail = c.pass ? "all 16 agree" : "disagree: " + c.detail;
        checks.push_back(c);
    }
    {
        Rng rng(derive_seed(seed, 0xc4a7));
        const StateVector resource = channel.state();
        double worst = 0.0;
        for (int n = 0; n < 20; ++n) {
            const InputState chi = random_input(rng);
            const StateVector joint = tensor(chi.state(), resource);
            for (const auto& s : table) {
                const auto a = project(joint, bell_state(s.i), {"1", "4"});
                const auto b = project(a.residual, bell_state(s.j), {"2", "3"});
                const auto expected = multiply(s.matrix, chi.amplitudes());
                for (std::size_t l = 0; l < 4; ++l) {
                    worst = std::max(worst, std::abs(b.residual[l] - 0.25 * expected[l]));
                }
            }
        }
        checks.push_back({"input_independence", worst, kAmplitudeTolerance,
                          worst <= kAmplitudeTolerance, "20 random inputs"});
    }
    {
        Check c{"pauli_diagonal_factorization", 0.0, kAmplitudeTolerance, true, ""};
        try {
            for (const auto& s : table) {
                const auto f = factorize(s);
                const double err =
                    max_abs_diff(kron(pauli(f.first), pauli(f.second)) * f.diag, s.matrix);
                c.value = std::max({c.value, err, f.diag.off_diagonal_mass()});
            }
            c.pass = c.value <= kAmplitudeTolerance;
        } catch (const FactorizationError& e) {
            c.pass = false;
            c.detail = e.what();
        }
        checks.push_back(c);
    }
    {
        const auto& k = channel.coefficients();
        const double expected = 16.0 * k[0] * k[1] * k[2] * k[3];
        const double det = determinant(table.front().matrix).real();
        const double err = expected == 0.0 ? std::abs(det) : std::abs(det - expected) / expected;
        checks.push_back({"determinant_sigma11", err, 1e-10, err <= 1e-10,
                          "det = " + num(det) + ", 16*alpha*beta*gamma*delta = " + num(expected)});
    }
    const Feasibility feasibility = invertibility_check(channel);
    checks.push_back({"feasibility", 0.0, 0.0, true, std::string(to_string(feasibility))});
    {
        const double err = std::abs(completeness_check(input, channel) - 1.0);
        checks.push_back({"completeness", err, kAmplitudeTolerance, err <= kAmplitudeTolerance,
                          "sum of 16 outcome probabilities"});
    }
    {
        const double d = verify_branch_expansion(input, channel);
        checks.push_back({"cnot_branch_expansion", d, kAmplitudeTolerance, d <= kAmplitudeTolerance,
                          "prefactor " + num(kBranchScale) + " (printed " +
                              num(kPrintedBranchScale) + ")"});
        const double e = verify_cnot_identity(channel);
        checks.push_back({"cnot_identity_sector", e, kAmplitudeTolerance, e <= kAmplitudeTolerance,
                          "prefactor " + num(kCnotIdentityScale)});
    }
    {
        Check c{"collective_unitary", 0.0, kAmplitudeTolerance, true, ""};
        if (feasibility == Feasibility::Impossible) {
            c.detail = "no plans: channel is singular";
        } else {
            for (int k = 0; k < 16; ++k) {
                const auto plan = plan_correction(OutcomeMessage::from_flat_index(k), channel);
                c.value = std::max(c.value, unitarity_defect(build_u2(plan)));
            }
            c.pass = c.value <= kAmplitudeTolerance;
            c.detail = "16 plans";
        }
        checks.push_back(c);
    }
    {
        const auto report = run_protocol(input, channel, Exhaustive{});
        const double m = channel.min_coefficient();
        const double closed = feasibility == Feasibility::Impossible ? 0.0 : 4.0 * m * m;
        const double err = std::abs(report.total_success - closed);
        checks.push_back({"success_probability", err, 1e-9, err <= 1e-9,
                          "total " + num(report.total_success) + ", 4*min^2 = " + num(closed)});
        const double f = 1.0 - report.fidelity_on_success;
        checks.push_back({"fidelity_on_success", f, 1e-9, f <= 1e-9,
                          "min fidelity " + num(report.fidelity_on_success)});
    }
    return checks;
}

std::string render_sigma_table(const ChannelSpec& channel, OutputFormat format) {
    const auto table = sigma_table(channel);
    if (format == OutputFormat::Structured) {
        json ops = json::array();
        for (const auto& s : table) {
            const auto f = factorize(s);
            json diag = json::array();
            for (const auto& d : f.diag.diagonal_entries()) {
                diag.push_back(complex_json(d));
            }
            ops.push_back({{"i", s.i},
                           {"j", s.j},
                           {"matrix", matrix_json(s.matrix)},
                           {"classification", std::string(to_string(classify(s.matrix)))},
                           {"factorization",
                            {{"first", std::string(to_string(f.first))},
                             {"second", std::string(to_string(f.second))},
                             {"diag", diag}}}});
        }
        return dump({{"kind", "sigma_table"}, {"channel", channel_json(channel)}, {"operators", ops}});
    }
    std::ostringstream out;
    out << "transformation operators for " << channel_text(channel) << "\n";
    for (const auto& s : table) {
        const auto f = factorize(s);
        out << "\nsigma(" << s.i << "," << s.j << ")  [" << to_string(classify(s.matrix))
            << "]  = (" << to_string(f.first) << " x " << to_string(f.second) << ") * diag(";
        const auto d = f.diag.diagonal_entries();
        for (std::size_t l = 0; l < 4; ++l) {
            out << (l ? ", " : "") << complex_text(d[l]);
        }
        out << ")\n";
        for (std::size_t r = 0; r < 4; ++r) {
            out << "  ";
            for (std::size_t c = 0; c < 4; ++c) {
                char buf[48];
                std::snprintf(buf, sizeof buf, "%12s", complex_text(s.matrix(r, c)).c_str());
                out << buf;
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string render_report(const TeleportReport& report, const ChannelSpec& channel,
                          const InputState& input, OutputFormat format) {
    if (format == OutputFormat::Structured) {
        json outcomes = json::array();
        for (const auto& r : report.per_outcome) {
            json rec = {{"i", r.message.i},
                        {"j", r.message.j},
                        {"probability", round15(r.probability)},
                        {"success_given_outcome", round15(r.success_given_outcome)}};
            if (report.sampled) {
                rec["count"] = r.count;
                rec["successes"] = r.successes;
            }
            outcomes.push_back(std::move(rec));
        }
        json in = json::array();
        for (const auto& a : input.amplitudes()) {
            in.push_back(complex_json(a));
        }
        json doc = {{"kind", "teleport_report"},
                    {"mode", report.sampled ? "sampled" : "exhaustive"},
                    {"channel", channel_json(channel)},
                    {"input", in},
                    {"feasibility", std::string(to_string(report.feasibility))},
                    {"per_outcome", outcomes},
                    {"total_success", round15(report.total_success)},
                    {"fidelity_on_success", round15(report.fidelity_on_success)},
                    {"seed", report.seed}};
        if (report.sampled) {
            doc["trials"] = report.trials;
            doc["standard_error"] = round15(report.standard_error);
        }
        return dump(doc);
    }
    std::ostringstream out;
    out << (report.sampled ? "sampled" : "exhaustive") << " teleportation run\n"
        << "channel: " << channel_text(channel) << "\n"
        << "input:   ";
    for (std::size_t k = 0; k < 4; ++k) {
        out << (k ? ", " : "") << complex_text(input.amplitudes()[k]);
    }
    out << "\nfeasibility: " << to_string(report.feasibility) << "\n\n";
    out << "   i  j      probability  success|outcome\n";
    for (const auto& r : report.per_outcome) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %2d %2d  %15.12f  %15.12f\n", r.message.i, r.message.j,
                      r.probability, r.success_given_outcome);
        out << buf;
    }
    out << "\ntotal_success:       " << num(report.total_success) << "\n";
    if (report.sampled) {
        out << "standard_error:      " << num(report.standard_error) << "\n"
            << "trials:              " << report.trials << "\n"
            << "seed:                " << report.seed << "\n";
    }
    out << "fidelity_on_success: " << num(report.fidelity_on_success) << "\n";
    return out.str();
}

std::string render_checks(const std::vector<Check>& checks, const ChannelSpec& channel,
                          OutputFormat format) {
    if (format == OutputFormat::Structured) {
        json arr = json::array();
        for (const auto& c : checks) {
            arr.push_back({{"name", c.name},
                           {"value", round15(c.value)},
                           {"tolerance", round15(c.tolerance)},
                           {"pass", c.pass},
                           {"detail", c.detail}});
        }
        return dump({{"kind", "verification"}, {"channel", channel_json(channel)}, {"checks", arr}});
    }
    std::ostringstream out;
    out << "verification for " << channel_text(channel) << "\n";
    for (const auto& c : checks) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "[%s] %-30s value=%-12.4g tol=%-8.1g ", c.pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.value, c.tolerance);
        out << buf << c.detail << "\n";
    }
    return out.str();
}

std::string execute(const RunConfig& config) {
    const ChannelSpec channel = resolve_channel(config);
    switch (config.mode) {
        case Mode::Extract:
            return render_sigma_table(channel, config.format);
        case Mode::Verify:
            return render_checks(verify_all(channel, resolve_input(config), config.seed), channel,
                                 config.format);
        case Mode::RunExhaustive: {
            const InputState input = resolve_input(config);
            auto report = run_protocol(input, channel, Exhaustive{});
            report.seed = config.seed;
            return render_report(report, channel, input, config.format);
        }
        case Mode::RunSampled: {
            const InputState input = resolve_input(config);
            const auto report =
                run_protocol(input, channel, Sampled{config.seed, config.trials});
            return render_report(report, channel, input, config.format);
        }
    }
    return {};
}

int run_main(const std::vector<std::string>& argv) {
    RunConfig config;
    try {
        config = parse_args(argv);
    } catch (const HelpRequested& h) {
        std::cout << h.what();
        return 0;
    } catch (const UsageError& e) {
        std::string msg = e.what();
        while (!msg.empty() && msg.back() == '\n') {
            msg.pop_back();
        }
        std::cerr << "error: " << msg << "\n";
        return 2;
    }

    std::string output;
    try {
        output = execute(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (config.out_path) {
        std::ofstream file(*config.out_path, std::ios::binary);
        file << output;
        file.flush();
        if (!file) {
            std::cerr << "error: cannot write " << *config.out_path << "\n";
            return 1;
        }
        return 0;
    }
    std::cout << output << std::flush;
    return std::cout ? 0 : 1;
}

}  // namespace telexp::cli
