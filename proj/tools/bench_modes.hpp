#pragma once

#include <weft/weft.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bench {

struct bench_config {
    int workers = 2;
    long stream_len = 10;
    long task_cost_us = 0;       // synthetic spin per task
    std::size_t queue_capacity = weft::default_queue_capacity;
    bool trace = false;
    std::string report_path;     // empty: no report file
};

// Structured, order-preserving key=value results plus the process exit code
// (0 ok, 1 self-check failure).
struct example_report {
    int exit_code = 0;
    std::vector<std::pair<std::string, std::string>> results;

    void put(std::string key, std::string value) {
        results.emplace_back(std::move(key), std::move(value));
    }
    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : results)
            if (k == key) return &v;
        return nullptr;
    }
    std::string to_text() const;
};

struct speedup_report {
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    double speedup = 0.0;
    double predicted = 0.0; // farm model: the worker count
    int workers_used = 0;
    bool scaled_warning = false; // more workers than cores
};

struct pipeline_model_report {
    int stages = 0;
    double stage_cost_ms = 0.0;    // configured per-stage, per-item cost
    double service_time_ms = 0.0;  // measured per-item service time
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    double measured_speedup = 0.0;
    double predicted_speedup = 0.0; // sum of stage times over the max
};

// Named example topologies: hello | sieve | farm | farm-noc | broadcast |
// map | accel. Throws std::invalid_argument for an unknown mode or bad
// parameters.
example_report run_example(const std::string& mode, const bench_config& cfg);

// Serial spin baseline vs. an nw-worker farm over the same tasks. Requires
// task_cost_us >= 50 so the work dominates the plumbing.
speedup_report run_speedup(const bench_config& cfg);

// Balanced k-stage pipeline (k = cfg.workers) against the serial baseline;
// the per-item service time of the pipeline should approach the slowest
// stage's cost once stages overlap.
pipeline_model_report run_pipeline_model(const bench_config& cfg);

std::string speedup_to_text(const speedup_report& r);

} // namespace bench
