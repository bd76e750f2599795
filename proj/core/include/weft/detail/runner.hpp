#pragma once

#include "weft/detail/ports.hpp"
#include "weft/node.hpp"
#include "weft/stats.hpp"

#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace weft::detail {

// State shared by every node of one run.
struct run_state {
    bool trace = false;

    void record_error(std::string msg) {
        std::lock_guard<std::mutex> lock(mu_);
        errors_.push_back(std::move(msg));
    }
    bool failed() const {
        std::lock_guard<std::mutex> lock(mu_);
        return !errors_.empty();
    }
    std::string first_error() const {
        std::lock_guard<std::mutex> lock(mu_);
        return errors_.empty() ? std::string{} : errors_.front();
    }

private:
    mutable std::mutex mu_;
    std::vector<std::string> errors_;
};

struct runner_options {
    // Head of a feedback cycle: activated once with an empty item to seed
    // the loop, then driven by items arriving on the feedback edge. When it
    // decides end(), end-of-stream is forwarded downstream first and the
    // feedback edge is drained before on_end, so in-flight items cannot be
    // stranded.
    bool feedback_head = false;
};

// Runs one node on its own thread: on_init, the service loop, on_end,
// end-of-stream forwarding. in == nullptr makes the node a source,
// out == nullptr a sink.
class node_runner {
public:
    using clock = std::chrono::steady_clock;

    node_runner(std::shared_ptr<node> n, std::unique_ptr<input_port> in,
                std::unique_ptr<output_port> out, int node_id,
                runner_options opts, run_state* state);

    node_runner(const node_runner&) = delete;
    node_runner& operator=(const node_runner&) = delete;
    ~node_runner();

    void start();
    void join();

    const node_stats& stats() const noexcept { return stats_; }
    bool ran_service() const noexcept { return ran_service_; }
    clock::time_point first_service() const noexcept { return first_svc_; }
    clock::time_point last_service() const noexcept { return last_svc_; }

private:
    void thread_main();
    svc_result invoke(item input, node_context& ctx);
    // true  -> keep running
    // false -> the node decided end()
    bool handle(svc_result r);
    void drain_input();
    void close_output();

    std::shared_ptr<node> node_;
    std::unique_ptr<input_port> in_;
    std::unique_ptr<output_port> out_;
    runner_options opts_;
    run_state* state_;

    node_stats stats_;
    bool ran_service_ = false;
    clock::time_point first_svc_{};
    clock::time_point last_svc_{};

    std::thread thread_;
    bool joined_ = true;
};

// run_node: wires a single node between optional endpoints and runs it on a
// fresh thread. The skeletons build exactly these, many at a time.
inline std::unique_ptr<node_runner> run_node(std::shared_ptr<node> n,
                                             std::unique_ptr<input_port> in,
                                             std::unique_ptr<output_port> out,
                                             int node_id, run_state* state,
                                             runner_options opts = {}) {
    auto r = std::make_unique<node_runner>(std::move(n), std::move(in),
                                           std::move(out), node_id, opts, state);
    r->start();
    return r;
}

} // namespace weft::detail
