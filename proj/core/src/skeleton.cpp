#include "weft/skeleton.hpp"

#include <chrono>
#include <ostream>
#include <stdexcept>

namespace weft {

run_report skeleton_base::run_and_wait_end() {
    using clock = std::chrono::steady_clock;

    if (nested_)
        throw std::logic_error("a nested skeleton is run by its parent");
    validate_runnable();

    completed_ = false;
    started_once_ = true;
    state_ = std::make_unique<detail::run_state>();
    state_->trace = trace_flag();

    detail::build_context ctx;
    ctx.state = state_.get();
    wiring().build(ctx, nullptr);
    runners_ = std::move(ctx.runners);

    const auto t0 = clock::now();
    for (auto& r : runners_) r->start();
    for (auto& r : runners_) r->join();
    const auto t1 = clock::now();

    total_ms_ = std::chrono::duration<double, std::milli>(t1 - t0).count();

    // busiest node's service window: from its first service entry to its
    // last service exit, hooks excluded
    work_ms_ = 0.0;
    for (auto& r : runners_) {
        if (!r->ran_service()) continue;
        const double span = std::chrono::duration<double, std::milli>(
                                r->last_service() - r->first_service())
                                .count();
        if (span > work_ms_) work_ms_ = span;
    }

    completed_ = true;

    run_report rep;
    rep.ok = !state_->failed();
    rep.elapsed_ms = total_ms_;
    rep.threads = static_cast<int>(runners_.size());
    rep.error = state_->first_error();
    return rep;
}

double skeleton_base::total_time_ms() const {
    if (!completed_)
        throw std::logic_error("total_time_ms: no completed run");
    return total_ms_;
}

double skeleton_base::work_time_ms() const {
    if (!completed_)
        throw std::logic_error("work_time_ms: no completed run");
    return work_ms_;
}

std::vector<node_stats> skeleton_base::last_stats() const {
    std::vector<node_stats> out;
    if (!completed_ || !state_ || !state_->trace) return out;
    out.reserve(runners_.size());
    for (const auto& r : runners_) out.push_back(r->stats());
    return out;
}

void skeleton_base::dump_stats(std::ostream& os) const {
    if (!completed_ || !state_ || !state_->trace) {
        os << "trace not enabled\n";
        return;
    }
    write_stats(os, last_stats());
}

} // namespace weft
