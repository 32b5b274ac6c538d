#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tamesym/cyclify.hpp"
#include "tamesym/geometry.hpp"

namespace tamesym {

using Json = nlohmann::json;

struct SymbolSpec {
    std::string a;
    std::string b;
    int exp = 1;
};

struct CurveSpec {
    std::string equation;
    bool irreducible = false; // caller's assertion, echoed in the report
};

// Optional caller-supplied witness for one target; it replaces the computed
// witness and is then verified, never trusted.
struct WitnessSpec {
    std::string w;
    std::string constant;
};

struct TargetSpec {
    std::string point; // affine polynomial in y over k0(x), or "infinity"
    std::string rep;
    std::optional<WitnessSpec> witness;
};

struct JobOptions {
    unsigned long seed = 1;
    int rounds = 12;
    int factor_bound = 8;
};

struct JobSpec {
    int n = 0;
    std::vector<SymbolSpec> symbols;
    std::vector<CurveSpec> curve;
    std::vector<TargetSpec> targets;
    JobOptions options;
};

// Strict translation of a job document; throws Unsupported on anything
// malformed (missing fields, wrong types, unknown keys).
JobSpec jobspec_from_json(const Json& doc);

// In-memory job for callers that already hold exact objects: the string
// round trip is bypassed but every verification stage still runs.
struct PipelineData {
    int n;
    BrauerPresentation presentation;
    std::vector<CurveComponent> components;
    JobOptions options;
};

struct RunResult {
    Json report;
    int exit_code = 0;
};

// Full run: classify, normalize coordinates, survey ramification, construct
// a cyclic presentation, verify it, and check the difference class.
RunResult run_pipeline(const PipelineData& data);

// Dispatch on subcommand: residues, reciprocity, transform, cyclify,
// pipeline, selftest. Exit code 0 = verified, 1 = verification failed
// (report names the offending point), 2 = unsupported or malformed input.
RunResult run_job(const std::string& subcommand, const JobSpec& job);

// format = "json" (canonical, sorted keys, exact strings) or "text".
// Byte-stable for a fixed report.
std::string emit_report(const Json& report, const std::string& format);

} // namespace tamesym
