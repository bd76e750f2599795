#include "weft/farm.hpp"

#include "weft/pipeline.hpp"

#include <stdexcept>
#include <string>

namespace weft {

void load_balancer::broadcast(item task) {
    if (!channel_)
        throw std::logic_error("load_balancer: not bound to a running farm");
    channel_->broadcast(std::move(task));
}

namespace {

// Output port of the dispatching thread. Picks a worker per task and sticks
// to it across full-queue retries, so round robin stays deterministic and a
// full queue blocks rather than skips ahead.
class dispatch_port final : public detail::output_port {
public:
    dispatch_port(std::shared_ptr<spmc_channel> ch, load_balancer* lb, bool ondemand)
        : ch_(std::move(ch)), lb_(lb), ondemand_(ondemand) {}

    push_status try_send(item& v) override {
        if (pending_ < 0) {
            if (ondemand_) {
                pending_ = ch_->try_on_demand_pick();
                if (pending_ < 0) return push_status::full; // nobody hungry yet
            } else {
                const int idx = lb_->select_worker();
                if (idx < 0 || static_cast<std::size_t>(idx) >= ch_->consumers())
                    throw std::out_of_range("farm: balancer selected worker " +
                                            std::to_string(idx) + " of " +
                                            std::to_string(ch_->consumers()));
                pending_ = idx;
            }
        }
        const push_status st = ch_->dispatch_to(static_cast<std::size_t>(pending_), v);
        if (st == push_status::ok) pending_ = -1;
        return st;
    }

    void close() override { ch_->close(); }

private:
    std::shared_ptr<spmc_channel> ch_;
    load_balancer* lb_;
    bool ondemand_;
    int pending_ = -1;
};

} // namespace

farm::farm(farm_options opts) : opts_(opts) {}

void farm::ensure_editable() const {
    if (started_once_)
        throw std::logic_error("farm: cannot modify the topology after the run started");
}

farm& farm::add_emitter(std::shared_ptr<node> emitter) {
    ensure_editable();
    if (!emitter) throw std::invalid_argument("farm: null emitter");
    emitter_ = std::move(emitter);
    return *this;
}

farm& farm::add_worker(std::shared_ptr<node> worker) {
    ensure_editable();
    if (!worker) throw std::invalid_argument("farm: null worker");
    workers_.push_back(
        std::make_shared<detail::leaf_component>(std::move(worker), opts_.queue_capacity));
    return *this;
}

farm& farm::add_worker(std::shared_ptr<pipeline> worker) {
    ensure_editable();
    if (!worker) throw std::invalid_argument("farm: null worker");
    if (worker->has_feedback())
        throw std::invalid_argument("farm: a skeleton with a feedback edge cannot be nested");
    worker->mark_nested();
    workers_.push_back(std::move(worker));
    return *this;
}

farm& farm::add_workers(std::vector<std::shared_ptr<node>> workers) {
    for (auto& w : workers) add_worker(std::move(w));
    return *this;
}

farm& farm::add_collector(std::shared_ptr<node> collector) {
    ensure_editable();
    if (!collector) throw std::invalid_argument("farm: null collector");
    collector_ = std::move(collector);
    return *this;
}

farm& farm::set_balancer(std::shared_ptr<load_balancer> balancer) {
    ensure_editable();
    if (!balancer) throw std::invalid_argument("farm: null balancer");
    lb_ = std::move(balancer);
    return *this;
}

farm& farm::set_scheduling_ondemand(bool on) {
    ensure_editable();
    opts_.ondemand = on;
    return *this;
}

farm& farm::wrap_around() {
    if (nested())
        throw std::logic_error("wrap_around: only the outermost skeleton may carry feedback");
    if (!emitter_)
        throw std::invalid_argument("farm: feedback requires an emitter to receive it");
    feedback_ = true;
    return *this;
}

load_balancer& farm::balancer() {
    if (!lb_) lb_ = std::make_shared<load_balancer>();
    return *lb_;
}

void farm::validate_runnable() const {
    if (workers_.empty())
        throw std::invalid_argument("farm: needs at least one worker");
    if (!emitter_)
        throw std::invalid_argument(
            "farm: without an emitter the farm must be fed by an upstream stage "
            "or run in accelerator mode");
}

void farm::ensure_channel() {
    if (channel_) return;
    if (workers_.empty())
        throw std::invalid_argument("farm: needs at least one worker");
    channel_ = std::make_shared<spmc_channel>(workers_.size(), opts_.queue_capacity,
                                              opts_.broadcast_payloads);
    balancer(); // default-construct if the user never touched it
    lb_->bind(channel_, static_cast<int>(workers_.size()));
}

std::unique_ptr<detail::output_port> farm::make_input_sink(detail::build_context&) {
    sink_issued_ = true;
    if (emitter_) {
        auto edge = std::make_shared<spsc_queue<item>>(opts_.queue_capacity);
        pending_in_ = std::make_unique<detail::spsc_input>(edge);
        return std::make_unique<detail::spsc_output>(edge);
    }
    // No emitter: the producer dispatches straight onto the worker legs.
    ensure_channel();
    return std::make_unique<dispatch_port>(channel_, lb_.get(), opts_.ondemand);
}

void farm::adopt_input(std::unique_ptr<detail::input_port> in) {
    if (!emitter_)
        throw std::invalid_argument("farm: used as a worker it requires an emitter");
    sink_issued_ = true;
    pending_in_ = std::move(in);
}

void farm::mark_feedback_head() {
    if (!emitter_)
        throw std::invalid_argument("farm: feedback requires an emitter to receive it");
    head_marked_ = true;
}

void farm::build(detail::build_context& ctx, std::unique_ptr<detail::output_port> out) {
    if (workers_.empty())
        throw std::invalid_argument("farm: needs at least one worker");
    if (!collector_ && out)
        throw std::invalid_argument(
            "farm: without a collector there is no output stream to feed a downstream consumer");
    if (!emitter_ && !sink_issued_)
        throw std::invalid_argument(
            "farm: without an emitter the farm must be fed by an upstream stage "
            "or run in accelerator mode");
    if (feedback_ && out)
        throw std::invalid_argument("farm: a feedback farm has no external output");

    ensure_channel();
    auto ch = channel_;
    const std::size_t nw = workers_.size();

    std::shared_ptr<mpsc_channel> fanin;
    if (collector_ || feedback_)
        fanin = std::make_shared<mpsc_channel>(nw, opts_.queue_capacity);

    std::unique_ptr<detail::input_port> emitter_in;
    std::unique_ptr<detail::output_port> collector_out;
    if (feedback_) {
        if (collector_) {
            // collector -> emitter feedback edge
            auto fb = std::make_shared<spsc_queue<item>>(opts_.queue_capacity);
            emitter_in = std::make_unique<detail::spsc_input>(fb);
            collector_out = std::make_unique<detail::spsc_output>(fb);
        } else {
            // merged worker outputs feed the emitter directly
            emitter_in = std::make_unique<detail::mpsc_input>(fanin);
        }
    } else {
        emitter_in = std::move(pending_in_); // null for a source emitter
        collector_out = std::move(out);
    }

    if (emitter_) {
        detail::runner_options ro;
        ro.feedback_head = feedback_ || head_marked_;
        ctx.runners.push_back(std::make_unique<detail::node_runner>(
            emitter_, std::move(emitter_in),
            std::make_unique<dispatch_port>(ch, lb_.get(), opts_.ondemand),
            ctx.next_id++, ro, ctx.state));
    }

    for (std::size_t i = 0; i < nw; ++i) {
        workers_[i]->adopt_input(std::make_unique<detail::spmc_leg_input>(ch, i));
        std::unique_ptr<detail::output_port> wout;
        if (fanin)
            wout = std::make_unique<detail::mpsc_leg_output>(fanin, i);
        else
            wout = std::make_unique<detail::null_output>();
        workers_[i]->build(ctx, std::move(wout));
    }

    if (collector_) {
        ctx.runners.push_back(std::make_unique<detail::node_runner>(
            collector_, std::make_unique<detail::mpsc_input>(fanin),
            std::move(collector_out), ctx.next_id++, detail::runner_options{},
            ctx.state));
    }

    // per-build wiring state; the next build starts from fresh queues
    channel_.reset();
    pending_in_.reset();
    sink_issued_ = false;
    head_marked_ = false;
}

} // namespace weft
