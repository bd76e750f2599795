#include "weft/accelerator.hpp"

#include "weft/affinity.hpp"
#include "weft/detail/backoff.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace weft {

int recommended_accelerator_workers() noexcept {
    return std::max(1, core_count() - 1);
}

accelerator::accelerator(std::shared_ptr<farm> topology) {
    if (!topology) throw std::invalid_argument("accelerator: null topology");
    if (topology->has_feedback())
        throw std::invalid_argument(
            "accelerator: a feedback topology cannot also take an offload stream");
    result_expected_ = topology->has_collector();
    trace_ = static_cast<skeleton_base&>(*topology).trace_flag();
    capacity_ = topology->queue_capacity();
    topology->mark_nested();
    wiring_ = topology.get();
    skeleton_ = std::move(topology);
}

accelerator::accelerator(std::shared_ptr<pipeline> topology) {
    if (!topology) throw std::invalid_argument("accelerator: null topology");
    if (topology->has_feedback())
        throw std::invalid_argument(
            "accelerator: a feedback topology cannot also take an offload stream");
    result_expected_ = true; // the last stage's output is the result stream
    trace_ = static_cast<skeleton_base&>(*topology).trace_flag();
    capacity_ = topology->queue_capacity();
    topology->mark_nested();
    wiring_ = topology.get();
    skeleton_ = std::move(topology);
}

accelerator::~accelerator() {
    if (phase_ == phase::running && offload_sink_) offload_sink_->close();
    for (auto& r : runners_) r->join();
}

void accelerator::throw_if_not(phase expect, const char* what) const {
    if (phase_ != expect) throw std::logic_error(what);
}

void accelerator::run_then_freeze() {
    throw_if_not(phase::idle, "run_then_freeze: accelerator already started");

    state_ = std::make_unique<detail::run_state>();
    state_->trace = trace_;

    detail::build_context ctx;
    ctx.state = state_.get();
    offload_sink_ = wiring_->make_input_sink(ctx);
    std::unique_ptr<detail::output_port> out;
    if (result_expected_) {
        auto rq = std::make_shared<spsc_queue<item>>(capacity_);
        out = std::make_unique<detail::spsc_output>(rq);
        result_in_ = std::make_unique<detail::spsc_input>(rq);
    }
    wiring_->build(ctx, std::move(out));
    runners_ = std::move(ctx.runners);

    started_at_ = std::chrono::steady_clock::now();
    for (auto& r : runners_) r->start();
    phase_ = phase::running;
}

void accelerator::offload(item task) {
    if (phase_ == phase::idle)
        throw std::logic_error("offload: run_then_freeze first");
    throw_if_not(phase::running, "offload: stream already ended");
    detail::send_with_retry(*offload_sink_, task, unbounded_retries,
                            default_send_ticks, nullptr);
}

void accelerator::offload_eos() {
    if (phase_ == phase::idle)
        throw std::logic_error("offload_eos: run_then_freeze first");
    throw_if_not(phase::running, "offload_eos: stream already ended");
    offload_sink_->close();
    phase_ = phase::draining;
}

load_status accelerator::load_result(item& out) {
    if (phase_ == phase::idle)
        throw std::logic_error("load_result: run_then_freeze first");
    if (!result_in_)
        throw std::logic_error("load_result: topology has no result channel");
    detail::backoff b;
    for (;;) {
        switch (result_in_->try_recv(out)) {
        case poll_status::ready:
            return load_status::item;
        case poll_status::closed:
            return load_status::closed;
        case poll_status::empty:
            b.pause();
            break;
        }
    }
}

load_status accelerator::load_result_nb(item& out) {
    if (phase_ == phase::idle)
        throw std::logic_error("load_result_nb: run_then_freeze first");
    if (!result_in_)
        throw std::logic_error("load_result_nb: topology has no result channel");
    switch (result_in_->try_recv(out)) {
    case poll_status::ready:
        return load_status::item;
    case poll_status::closed:
        return load_status::closed;
    default:
        return load_status::not_ready;
    }
}

run_report accelerator::wait() {
    if (phase_ == phase::running)
        throw std::logic_error("wait: offload_eos first (waiting on an open stream deadlocks)");
    throw_if_not(phase::draining, "wait: nothing to wait for");
    for (auto& r : runners_) r->join();
    total_ms_ = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started_at_)
                    .count();
    phase_ = phase::stopped;

    run_report rep;
    rep.ok = !state_->failed();
    rep.elapsed_ms = total_ms_;
    rep.threads = thread_count();
    rep.error = state_->first_error();
    return rep;
}

std::vector<node_stats> accelerator::last_stats() const {
    std::vector<node_stats> out;
    if (phase_ != phase::stopped || !trace_) return out;
    out.reserve(runners_.size());
    for (const auto& r : runners_) out.push_back(r->stats());
    return out;
}

void accelerator::dump_stats(std::ostream& os) const {
    if (phase_ != phase::stopped || !trace_) {
        os << "trace not enabled\n";
        return;
    }
    write_stats(os, last_stats());
}

} // namespace weft
