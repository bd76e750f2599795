#pragma once

#include "weft/item.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace weft {

namespace detail {
class output_port;
class node_runner;
} // namespace detail

struct node_stats;

inline constexpr std::uint64_t unbounded_retries = ~std::uint64_t{0};
inline constexpr std::uint32_t default_send_ticks = 256;

enum class send_status { ok, failed };

// What one service invocation asks the runtime to do next:
//   emit(v) - deliver v on the output stream, then run again
//   go_on() - no output this time, keep the node alive
//   end()   - terminate this node and propagate end-of-stream
class svc_result {
public:
    static svc_result emit(item v) { return svc_result(kind::emit, std::move(v)); }
    static svc_result go_on() { return svc_result(kind::go_on, item{}); }
    static svc_result end() { return svc_result(kind::end, item{}); }

    bool is_emit() const noexcept { return kind_ == kind::emit; }
    bool is_go_on() const noexcept { return kind_ == kind::go_on; }
    bool is_end() const noexcept { return kind_ == kind::end; }

    item take_payload() noexcept { return std::move(payload_); }

private:
    enum class kind : unsigned char { emit, go_on, end };
    svc_result(kind k, item v) : payload_(std::move(v)), kind_(k) {}
    item payload_;
    kind kind_;
};

// Handed to every lifecycle hook and service invocation. send_out delivers
// items on the node's output stream ahead of whatever the invocation
// returns; it blocks while the downstream queue is full and fails only once
// the retry budget is exhausted.
class node_context {
public:
    int node_id() const noexcept { return id_; }
    bool has_output() const noexcept { return out_ != nullptr; }

    send_status send_out(item v) {
        return send_out(std::move(v), unbounded_retries, default_send_ticks);
    }
    send_status send_out(item v, std::uint64_t retry_limit, std::uint32_t wait_ticks);

private:
    friend class detail::node_runner;
    node_context(int id, detail::output_port* out, node_stats* stats)
        : id_(id), out_(out), stats_(stats) {}

    int id_;
    detail::output_port* out_;
    node_stats* stats_;
};

// A sequential concurrent activity: one logical input stream, one logical
// output stream, and a thread of its own. Subclasses put business logic in
// service(); on_init/on_end run exactly once per run, before the first and
// after the last service invocation.
//
// A node with no input channel is a source: it is invoked with an empty
// item over and over until it returns end(). A node with an input channel
// is invoked once per input item, in arrival order, and stops (running
// on_end, then forwarding end-of-stream) when the upstream closes.
class node {
public:
    virtual ~node() = default;

    // Return false to abort the whole run; the error surfaces at
    // run_and_wait_end / wait.
    virtual bool on_init(node_context&) { return true; }

    virtual svc_result service(item input, node_context& ctx) = 0;

    virtual void on_end(node_context&) {}
};

// Outcome of running a topology to completion.
struct run_report {
    bool ok = false;
    double elapsed_ms = 0.0;
    int threads = 0;
    std::string error; // empty when ok

    explicit operator bool() const noexcept { return ok; }
};

} // namespace weft
