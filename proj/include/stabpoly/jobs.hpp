#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace stabpoly {

// A single unit of work. The payload shape depends on the command; it is
// validated against the command's schema before any computation starts.
struct JobSpec {
    std::string command;  // classify | extend | gw | walls | check | witness
    std::string group;
    nlohmann::json payload;
    std::string output_path;  // empty = stdout

    static JobSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;  // canonical echo form
};

struct RunResult {
    nlohmann::json envelope;
    int exit_code = 0;  // 0 stable/success, 3 strictly semistable, 4 unstable, 2 error
};

std::string input_hash(const JobSpec& job);

// Dispatches to the owning module and assembles the result envelope.
RunResult run(const JobSpec& job);

// Newline-delimited jobs; envelopes come back in input order. Per-job errors
// do not abort the batch; the summary exit code is the most severe one.
struct BatchResult {
    std::vector<RunResult> results;
    int exit_code = 0;
};

BatchResult batch(const std::string& path, int workers = 1);
BatchResult batch_jobs(const std::vector<std::string>& lines, int workers = 1);

int severity_rank(int exit_code);  // 0 < 3 < 4 < 2

}  // namespace stabpoly
