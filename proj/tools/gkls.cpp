// Copyright 2026 The gkls authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gkls -- command line front end.
//
// Exit codes: 0 success / all checks pass, 1 constraint violation or witness
// INCONSISTENT, 2 input error, 3 numerical failure. `build` additionally
// distinguishes 4 = non-Hermitian H and 5 = non-PSD C.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gkls/constraints.hpp"
#include "gkls/dynamics.hpp"
#include "gkls/ensemble.hpp"
#include "gkls/json_io.hpp"
#include "gkls/proofcheck.hpp"
#include "gkls/rng.hpp"
#include "gkls/spectrum.hpp"
#include "gkls/version.hpp"

namespace {

using gkls::Json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNotHermitian = 4;
constexpr int kExitNotPositive = 5;

struct OutputOptions {
    std::string out_path;  // empty = stdout
    bool quiet = false;
    bool timestamp = false;
};

void add_output_options(CLI::App* cmd, OutputOptions* opts) {
    cmd->add_option("--out", opts->out_path, "Write the report to this file (default: stdout)");
    cmd->add_flag("--quiet", opts->quiet, "Suppress progress notes on stderr");
    cmd->add_flag("--timestamp", opts->timestamp,
                  "Record the wall-clock time in the manifest (off by default so identical "
                  "runs produce identical bytes)");
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json make_manifest(const std::string& command, Json config,
                   const std::vector<std::pair<std::string, std::string>>& input_digests,
                   bool timestamp) {
    Json inputs = Json::object();
    for (const auto& [path, digest] : input_digests) inputs[path] = digest;
    return Json{{"command", command},
                {"config", std::move(config)},
                {"inputs", std::move(inputs)},
                {"version", std::string(gkls::kToolName) + " " + gkls::kVersion},
                {"rng", gkls::kRngIdentity},
                {"timestamp", timestamp ? Json(iso8601_now()) : Json(nullptr)}};
}

void emit(const std::string& content, const OutputOptions& opts) {
    if (opts.out_path.empty()) {
        std::cout << content << "\n";
    } else {
        gkls::write_text_file_atomic(opts.out_path, content + "\n");
    }
}

void emit_json(Json doc, Json manifest, const OutputOptions& opts) {
    Json wrapped = Json::object();
    wrapped["manifest"] = std::move(manifest);
    for (auto& [key, value] : doc.items()) wrapped[key] = std::move(value);
    emit(wrapped.dump(2), opts);
}

void note(const OutputOptions& opts, const std::string& message) {
    if (!opts.quiet) std::cerr << message << "\n";
}

Json load_json(const std::string& path, std::vector<std::pair<std::string, std::string>>* digests) {
    const std::string text = gkls::read_text_file(path);
    if (digests) digests->emplace_back(path, gkls::fnv1a_digest(text));
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw gkls::SchemaError("failed to parse " + path + ": " + e.what());
    }
}

std::vector<double> parse_time_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token == "inf" || token == "+inf" || token == "Infinity") {
            values.push_back(std::numeric_limits<double>::infinity());
        } else {
            try {
                values.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw gkls::SchemaError("cannot parse time value \"" + token + "\"");
            }
        }
    }
    return values;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// build

struct BuildArgs {
    std::string in_path;
    gkls::GeneratorParseOptions parse;
    OutputOptions out;
};

int cmd_build(const BuildArgs& args) {
    std::vector<std::pair<std::string, std::string>> digests;
    const Json doc = load_json(args.in_path, &digests);

    gkls::GKLSGenerator generator = [&] {
        try {
            return gkls::generator_from_json(doc, args.parse);
        } catch (const gkls::HermiticityError& e) {
            std::cerr << "error: " << e.what() << "\n";
            std::exit(kExitNotHermitian);
        } catch (const gkls::PositivityError& e) {
            std::cerr << "error: " << e.what() << "\n";
            std::exit(kExitNotPositive);
        }
    }();

    const double trace_c = generator.kossakowski_trace();
    Json manifest = make_manifest("build",
                                  Json{{"in", args.in_path},
                                       {"hermiticity_tolerance", args.parse.hermiticity_tolerance},
                                       {"psd_tolerance", args.parse.psd_tolerance}},
                                  digests, args.out.timestamp);
    emit_json(Json{{"d", generator.d},
                   {"trace_C", trace_c},
                   {"generator", gkls::generator_to_json(generator)}},
              std::move(manifest), args.out);
    note(args.out, "d = " + std::to_string(generator.d) + ", Tr C = " + format_double(trace_c));
    return kExitPass;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumArgs {
    std::string in_path;
    gkls::SpectrumOptions options;
    OutputOptions out;
};

int cmd_spectrum(const SpectrumArgs& args) {
    std::vector<std::pair<std::string, std::string>> digests;
    const gkls::GKLSGenerator generator =
        gkls::generator_from_json(load_json(args.in_path, &digests));
    const gkls::Superoperator super = gkls::to_superoperator(generator);
    const gkls::GeneratorSpectrum spec = gkls::compute_spectrum(super, args.options);
    const gkls::RelaxationProfile profile = gkls::relaxation_profile(spec);

    Json manifest = make_manifest("spectrum",
                                  Json{{"in", args.in_path},
                                       {"zero_radius", args.options.zero_radius},
                                       {"pair_radius", args.options.pair_radius}},
                                  digests, args.out.timestamp);
    emit_json(gkls::spectrum_report_json(spec, profile), std::move(manifest), args.out);
    return kExitPass;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
    std::string in_path;
    double tolerance = gkls::tol::witness;
    OutputOptions out;
};

int cmd_check(const CheckArgs& args) {
    std::vector<std::pair<std::string, std::string>> digests;
    const gkls::GKLSGenerator generator =
        gkls::generator_from_json(load_json(args.in_path, &digests));
    const gkls::GeneratorSpectrum spec =
        gkls::compute_spectrum(gkls::to_superoperator(generator));
    const gkls::RelaxationProfile profile = gkls::relaxation_profile(spec);
    const gkls::RateSet rates =
        gkls::make_rate_set(generator.d, profile.rates, gkls::RateSource::computed);

    const gkls::ConstraintReport main = gkls::check_main_theorem(rates, args.tolerance);
    const gkls::CorollaryReport corollary = gkls::check_corollary(rates, args.tolerance);
    std::optional<gkls::QubitRelationsReport> qubit;
    if (generator.d == 2) qubit = gkls::check_qubit_relations(rates, args.tolerance);

    const bool pass = main.pass && corollary.pass && (!qubit || qubit->pass);
    Json manifest = make_manifest(
        "check", Json{{"in", args.in_path}, {"tolerance", args.tolerance}}, digests,
        args.out.timestamp);
    Json doc = gkls::constraint_check_json(main, corollary, qubit ? &*qubit : nullptr);
    doc["pass"] = pass;
    emit_json(std::move(doc), std::move(manifest), args.out);
    return pass ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// witness

struct WitnessArgs {
    std::string in_path;
    int d = 0;
    std::string times_csv;
    double tolerance = gkls::tol::witness;
    bool tolerance_set = false;
    OutputOptions out;
};

int cmd_witness(const WitnessArgs& args) {
    std::vector<std::pair<std::string, std::string>> digests;
    int d = args.d;
    std::vector<double> times;
    double tolerance = args.tolerance;

    if (!args.in_path.empty()) {
        const Json doc = load_json(args.in_path, &digests);
        if (!doc.contains("d") || !doc.contains("times")) {
            throw gkls::SchemaError("witness document needs d and times");
        }
        d = doc.at("d").get<int>();
        for (const Json& t : doc.at("times")) times.push_back(gkls::time_from_json(t));
        if (doc.contains("tolerance") && !args.tolerance_set) {
            tolerance = doc.at("tolerance").get<double>();
        }
    } else {
        if (d == 0 || args.times_csv.empty()) {
            throw gkls::SchemaError("witness needs --in, or both --d and --times");
        }
        times = parse_time_list(args.times_csv);
    }

    const gkls::WitnessVerdict verdict = gkls::witness_measured_times(times, d, tolerance);

    Json times_doc = Json::array();
    for (const double t : times) times_doc.push_back(gkls::time_to_json(t));
    Json config{{"d", d}, {"times", std::move(times_doc)}, {"tolerance", tolerance}};
    if (!args.in_path.empty()) config["in"] = args.in_path;
    Json manifest = make_manifest("witness", std::move(config), digests, args.out.timestamp);
    emit_json(gkls::witness_verdict_json(verdict), std::move(manifest), args.out);
    note(args.out, verdict.consistent ? "CONSISTENT" : "INCONSISTENT");
    return verdict.consistent ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
    gkls::EnsembleConfig config;
    std::string csv_path;
    OutputOptions out;
};

int cmd_sample(const SampleArgs& args) {
    const gkls::EnsembleStats stats = gkls::run_ensemble(args.config);

    // The manifest repeats the computational parameters only; thread count
    // does not influence results and is left out.
    Json config{{"d", args.config.d},
                {"n_samples", args.config.n_samples},
                {"seed", args.config.seed},
                {"hamiltonian_scale", args.config.hamiltonian_scale},
                {"kossakowski_rank", args.config.kossakowski_rank},
                {"kossakowski_scale", args.config.kossakowski_scale}};
    Json manifest = make_manifest("sample", std::move(config), {}, args.out.timestamp);

    if (!args.csv_path.empty()) {
        std::string csv = "# manifest " + manifest.dump() + "\n";
        csv += "index,tightness,rate_sum,max_rate\n";
        for (std::size_t i = 0; i < stats.samples.size(); ++i) {
            const auto& rec = stats.samples[i];
            csv += std::to_string(i) + "," + format_double(rec.tightness) + "," +
                   format_double(rec.rate_sum) + "," + format_double(rec.max_rate) + "\n";
        }
        gkls::write_text_file_atomic(args.csv_path, csv);
    }

    emit_json(gkls::ensemble_stats_json(stats), std::move(manifest), args.out);
    note(args.out, "samples = " + std::to_string(stats.count) +
                       ", violations = " + std::to_string(stats.violation_count) +
                       ", max tightness = " + format_double(stats.max_tightness));
    return stats.violation_count == 0 ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// evolve

struct EvolveArgs {
    std::string generator_path;
    std::string state_path;
    double t_max = 1.0;
    int points = 11;
    std::string grid_csv;
    std::string format = "json";
    std::string entries;  // "i,j;k,l" selection for CSV output
    OutputOptions out;
};

std::vector<std::pair<int, int>> parse_entries(const std::string& spec, int d) {
    std::vector<std::pair<int, int>> entries;
    if (spec.empty()) {
        for (int i = 0; i < d; ++i) entries.emplace_back(i, i);
        return entries;
    }
    std::stringstream stream(spec);
    std::string token;
    while (std::getline(stream, token, ';')) {
        const auto comma = token.find(',');
        if (comma == std::string::npos) {
            throw gkls::SchemaError("entry selection must look like \"i,j;k,l\"");
        }
        const int i = std::stoi(token.substr(0, comma));
        const int j = std::stoi(token.substr(comma + 1));
        if (i < 0 || j < 0 || i >= d || j >= d) {
            throw gkls::SchemaError("entry selection out of range");
        }
        entries.emplace_back(i, j);
    }
    return entries;
}

int cmd_evolve(const EvolveArgs& args) {
    std::vector<std::pair<std::string, std::string>> digests;
    const gkls::GKLSGenerator generator =
        gkls::generator_from_json(load_json(args.generator_path, &digests));
    const gkls::DensityMatrix state(gkls::matrix_from_json(load_json(args.state_path, &digests)));

    const std::vector<double> grid = args.grid_csv.empty()
                                         ? gkls::uniform_grid(args.t_max, args.points)
                                         : parse_time_list(args.grid_csv);
    const gkls::Trajectory traj = gkls::evolve(generator, state, grid);

    Json config{{"generator", args.generator_path},
                {"state", args.state_path},
                {"output", args.format}};
    if (args.grid_csv.empty()) {
        config["grid"] = Json{{"t_max", args.t_max}, {"n_points", args.points}};
    } else {
        config["grid"] = Json{{"times", grid}};
    }
    Json manifest = make_manifest("evolve", std::move(config), digests, args.out.timestamp);

    if (args.format == "csv") {
        const auto entries = parse_entries(args.entries, generator.d);
        std::string csv = "# manifest " + manifest.dump() + "\n";
        csv += "t";
        for (const auto& [i, j] : entries) {
            csv += ",re_" + std::to_string(i) + "_" + std::to_string(j);
            csv += ",im_" + std::to_string(i) + "_" + std::to_string(j);
        }
        csv += ",trace_error,hermiticity_error,min_eigenvalue\n";
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            csv += format_double(traj.times[k]);
            for (const auto& [i, j] : entries) {
                csv += "," + format_double(traj.states[k](i, j).real());
                csv += "," + format_double(traj.states[k](i, j).imag());
            }
            const auto& diag = traj.diagnostics[k];
            csv += "," + format_double(diag.trace_error);
            csv += "," + format_double(diag.hermiticity_error);
            csv += "," + format_double(diag.min_eigenvalue) + "\n";
        }
        if (args.out.out_path.empty()) {
            std::cout << csv;
        } else {
            gkls::write_text_file_atomic(args.out.out_path, csv);
        }
        return kExitPass;
    }

    emit_json(gkls::trajectory_json(traj), std::move(manifest), args.out);
    return kExitPass;
}

// ---------------------------------------------------------------------------
// proofcheck

struct ProofcheckArgs {
    std::string in_path;
    long bw_samples = 1000;
    std::uint64_t seed = 1;
    double tolerance = 1e-8;
    OutputOptions out;
};

int cmd_proofcheck(const ProofcheckArgs& args) {
    std::vector<std::pair<std::string, std::string>> digests;
    const gkls::GKLSGenerator generator =
        gkls::generator_from_json(load_json(args.in_path, &digests));
    const gkls::GeneratorSpectrum spec =
        gkls::compute_spectrum(gkls::to_superoperator(generator));

    const auto identity_steps = gkls::check_rate_identity(generator, spec, args.tolerance);
    const auto chain_steps = gkls::check_chain_bound(generator, spec, args.tolerance);

    gkls::SplitMix64 rng(args.seed);
    double max_ratio = 0.0;
    bool bw_pass = true;
    for (long i = 0; i < args.bw_samples; ++i) {
        const gkls::Matrix a = gkls::random_ginibre(rng, generator.d, generator.d);
        const gkls::Matrix b = gkls::random_ginibre(rng, generator.d, generator.d);
        const auto step = gkls::check_bw_inequality(a, b);
        if (step.rhs > 0.0) max_ratio = std::max(max_ratio, step.lhs / step.rhs);
        bw_pass = bw_pass && step.pass;
    }

    bool pass = bw_pass;
    for (const auto& step : identity_steps) pass = pass && step.pass;
    for (const auto& step : chain_steps) pass = pass && step.pass;

    Json manifest = make_manifest("proofcheck",
                                  Json{{"in", args.in_path},
                                       {"bw_samples", args.bw_samples},
                                       {"seed", args.seed},
                                       {"tolerance", args.tolerance}},
                                  digests, args.out.timestamp);
    emit_json(Json{{"rate_identity", gkls::proof_steps_json(identity_steps)},
                   {"chain", gkls::proof_steps_json(chain_steps)},
                   {"commutator_norm",
                    Json{{"samples", args.bw_samples}, {"max_ratio", max_ratio},
                         {"pass", bw_pass}}},
                   {"pass", pass}},
              std::move(manifest), args.out);
    return pass ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"d-level GKLS generator toolkit: spectra, relaxation rates and "
                 "universal constraint checks"};
    app.require_subcommand(1);

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "Validate a generator document and emit the "
                                              "canonical (H, C) form");
    build->add_option("--in", build_args.in_path, "Generator JSON document")->required();
    build->add_option("--hermiticity-tolerance", build_args.parse.hermiticity_tolerance,
                      "Relative Hermiticity deviation accepted for H and C");
    build->add_option("--psd-tolerance", build_args.parse.psd_tolerance,
                      "Relative eigenvalue floor accepted for C");
    add_output_options(build, &build_args.out);

    SpectrumArgs spectrum_args;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and relaxation profile");
    spectrum->add_option("--in", spectrum_args.in_path, "Generator JSON document")->required();
    spectrum->add_option("--zero-radius", spectrum_args.options.zero_radius,
                         "Zero-eigenvalue radius, relative to max(1, ||M||)");
    spectrum->add_option("--pair-radius", spectrum_args.options.pair_radius,
                         "Conjugate-pairing radius, relative to the spectral radius");
    add_output_options(spectrum, &spectrum_args.out);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Relaxation-rate constraint checks");
    check->add_option("--in", check_args.in_path, "Generator JSON document")->required();
    check->add_option("--tolerance", check_args.tolerance,
                      "Relative slack for the inequalities");
    add_output_options(check, &check_args.out);

    WitnessArgs witness_args;
    auto* witness = app.add_subcommand("witness", "Consistency witness for measured times");
    witness->add_option("--in", witness_args.in_path,
                        "Witness JSON document {d, times, tolerance}");
    witness->add_option("--d", witness_args.d, "System dimension");
    witness->add_option("--times", witness_args.times_csv,
                        "Comma-separated relaxation times; use inf for non-decaying modes");
    witness->add_option("--tolerance", witness_args.tolerance, "Relative slack")
        ->each([&](const std::string&) { witness_args.tolerance_set = true; });
    add_output_options(witness, &witness_args.out);

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "Random-generator ensemble statistics");
    sample->add_option("--d", sample_args.config.d, "System dimension");
    sample->add_option("--n", sample_args.config.n_samples, "Number of samples");
    sample->add_option("--seed", sample_args.config.seed, "Ensemble seed");
    sample->add_option("--h-scale", sample_args.config.hamiltonian_scale, "Hamiltonian scale");
    sample->add_option("--c-scale", sample_args.config.kossakowski_scale, "Kossakowski scale");
    sample->add_option("--rank", sample_args.config.kossakowski_rank,
                       "Kossakowski rank (0 = full)");
    sample->add_option("--threads", sample_args.config.n_threads,
                       "Worker threads (0 = hardware); results are identical for any value");
    sample->add_option("--csv", sample_args.csv_path, "Also write per-sample records as CSV");
    add_output_options(sample, &sample_args.out);

    EvolveArgs evolve_args;
    auto* evolve = app.add_subcommand("evolve", "Semigroup trajectory");
    evolve->add_option("--generator", evolve_args.generator_path, "Generator JSON document")
        ->required();
    evolve->add_option("--state", evolve_args.state_path, "Initial state JSON document")
        ->required();
    evolve->add_option("--t-max", evolve_args.t_max, "Grid end time");
    evolve->add_option("--points", evolve_args.points, "Number of grid points");
    evolve->add_option("--grid", evolve_args.grid_csv, "Explicit comma-separated grid times");
    evolve->add_option("--output", evolve_args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    evolve->add_option("--entries", evolve_args.entries,
                       "Matrix entries for CSV output, e.g. \"0,0;0,1\" (default: diagonal)");
    add_output_options(evolve, &evolve_args.out);

    ProofcheckArgs proofcheck_args;
    auto* proofcheck = app.add_subcommand("proofcheck",
                                          "Verify the rate-sum bound step by step");
    proofcheck->add_option("--in", proofcheck_args.in_path, "Generator JSON document")
        ->required();
    proofcheck->add_option("--bw-samples", proofcheck_args.bw_samples,
                           "Random pairs for the commutator norm bound");
    proofcheck->add_option("--seed", proofcheck_args.seed, "Seed for the random pairs");
    proofcheck->add_option("--tolerance", proofcheck_args.tolerance,
                           "Absolute slack scale for proof steps");
    add_output_options(proofcheck, &proofcheck_args.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (build->parsed()) return cmd_build(build_args);
        if (spectrum->parsed()) return cmd_spectrum(spectrum_args);
        if (check->parsed()) return cmd_check(check_args);
        if (witness->parsed()) return cmd_witness(witness_args);
        if (sample->parsed()) return cmd_sample(sample_args);
        if (evolve->parsed()) return cmd_evolve(evolve_args);
        if (proofcheck->parsed()) return cmd_proofcheck(proofcheck_args);
    } catch (const gkls::NotTracePreservingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const gkls::DefectiveSpectrumError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const gkls::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const gkls::Error& e) {
        // Schema, dimension, rate, hermiticity and positivity problems are
        // input errors for every command except build, which exits earlier
        // with its own distinct codes.
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitPass;
}
