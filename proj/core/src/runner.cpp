#include "weft/detail/runner.hpp"

#include <exception>
#include <stdexcept>

namespace weft {

send_status node_context::send_out(item v, std::uint64_t retry_limit,
                                   std::uint32_t wait_ticks) {
    if (!out_)
        throw std::logic_error("send_out: node has no output channel");
    return detail::send_with_retry(*out_, v, retry_limit, wait_ticks,
                                   stats_ ? &stats_->push_retries : nullptr);
}

namespace detail {

namespace {
double ms_between(node_runner::clock::time_point a, node_runner::clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}
} // namespace

node_runner::node_runner(std::shared_ptr<node> n, std::unique_ptr<input_port> in,
                         std::unique_ptr<output_port> out, int node_id,
                         runner_options opts, run_state* state)
    : node_(std::move(n)), in_(std::move(in)), out_(std::move(out)),
      opts_(opts), state_(state) {
    stats_.node_id = node_id;
}

node_runner::~node_runner() {
    join();
}

void node_runner::start() {
    thread_ = std::thread([this] { thread_main(); });
    joined_ = false;
}

void node_runner::join() {
    if (!joined_ && thread_.joinable()) {
        thread_.join();
        joined_ = true;
    }
}

svc_result node_runner::invoke(item input, node_context& ctx) {
    const bool counted = input.has_value();
    clock::time_point t0{};
    if (state_->trace || !ran_service_) t0 = clock::now();
    if (!ran_service_) {
        first_svc_ = t0;
        ran_service_ = true;
    }
    svc_result r = node_->service(std::move(input), ctx);
    last_svc_ = clock::now();
    if (counted) ++stats_.items;
    if (state_->trace) stats_.svc_ms += ms_between(t0, last_svc_);
    return r;
}

bool node_runner::handle(svc_result r) {
    if (r.is_end()) return false;
    if (r.is_emit()) {
        item v = r.take_payload();
        if (out_) {
            send_with_retry(*out_, v, unbounded_retries, default_send_ticks,
                            &stats_.push_retries);
        }
        // a sink's returned payload has nowhere to go; it is dropped
    }
    return true;
}

void node_runner::drain_input() {
    if (!in_) return;
    backoff b;
    item discard;
    for (;;) {
        switch (in_->try_recv(discard)) {
        case poll_status::closed:
            return;
        case poll_status::ready:
            discard.reset();
            b.reset();
            break;
        case poll_status::empty:
            b.pause();
            break;
        }
    }
}

void node_runner::close_output() {
    if (out_) out_->close();
}

void node_runner::thread_main() {
    node_context ctx(stats_.node_id, out_.get(), &stats_);

    bool init_ok = false;
    try {
        init_ok = node_->on_init(ctx);
        if (!init_ok)
            state_->record_error("node " + std::to_string(stats_.node_id) +
                                 ": on_init failed");
    } catch (const std::exception& e) {
        state_->record_error("node " + std::to_string(stats_.node_id) +
                             ": on_init threw: " + e.what());
    } catch (...) {
        state_->record_error("node " + std::to_string(stats_.node_id) +
                             ": on_init threw");
    }
    if (!init_ok) {
        // Tear-down path: keep the topology flowing so every other node can
        // terminate, but never run service or on_end on this node.
        drain_input();
        close_output();
        return;
    }

    bool clean = true;
    try {
        if (!in_) {
            // Source: activated with an empty item until it decides end().
            for (;;) {
                if (!handle(invoke(item{}, ctx))) break;
            }
        } else if (opts_.feedback_head) {
            // Seed the cycle once, then consume the feedback edge.
            bool live = handle(invoke(item{}, ctx));
            backoff b;
            item in_item;
            while (live) {
                switch (in_->try_recv(in_item)) {
                case poll_status::ready:
                    b.reset();
                    live = handle(invoke(std::move(in_item), ctx));
                    break;
                case poll_status::empty:
                    ++stats_.pop_retries;
                    b.pause();
                    break;
                case poll_status::closed:
                    live = false; // cycle flushed from elsewhere
                    break;
                }
            }
            // Let the loop flush, then swallow whatever was still in flight.
            close_output();
            drain_input();
        } else {
            backoff b;
            item in_item;
            for (bool live = true; live;) {
                switch (in_->try_recv(in_item)) {
                case poll_status::ready:
                    b.reset();
                    live = handle(invoke(std::move(in_item), ctx));
                    break;
                case poll_status::empty:
                    ++stats_.pop_retries;
                    b.pause();
                    break;
                case poll_status::closed:
                    live = false;
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        state_->record_error("node " + std::to_string(stats_.node_id) +
                             ": service threw: " + e.what());
        clean = false;
    } catch (...) {
        state_->record_error("node " + std::to_string(stats_.node_id) +
                             ": service threw");
        clean = false;
    }

    if (!clean) {
        drain_input();
        close_output();
        return;
    }

    if (opts_.feedback_head) {
        // output already closed and feedback edge drained above
        node_->on_end(ctx);
        return;
    }

    // on_end runs before end-of-stream moves on, so downstream finalization
    // observes a topological order.
    node_->on_end(ctx);
    close_output();
}

} // namespace detail
} // namespace weft
