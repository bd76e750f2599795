#pragma once

#include "weft/channels.hpp"
#include "weft/detail/component.hpp"
#include "weft/node.hpp"
#include "weft/skeleton.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace weft {

class pipeline;

// Emitter-side policy choosing the destination worker per task. The default
// policy is round robin; set_victim(v) pins every later task to worker v
// until the next set_victim call. Subclass and override select_worker for
// anything fancier. broadcast() delivers one task to every worker instead
// of selecting one.
//
// A balancer instance is driven only by the dispatching thread (the emitter,
// or the upstream/host thread when the farm has no emitter).
class load_balancer {
public:
    virtual ~load_balancer() = default;

    // Worker index for the next task; called once per dispatched task.
    virtual int select_worker() {
        if (victim_ >= 0) return victim_;
        if (workers_ == 0) return 0;
        const int w = rr_;
        rr_ = (rr_ + 1) % workers_;
        return w;
    }

    // Sticky explicit target; pass -1 to return to round robin.
    void set_victim(int v) noexcept { victim_ = v; }
    int victim() const noexcept { return victim_; }
    int worker_count() const noexcept { return workers_; }

    // One reference/copy of the task to every worker (blocking). Valid only
    // while the farm is running.
    void broadcast(item task);

private:
    friend class farm;
    void bind(std::shared_ptr<spmc_channel> ch, int workers) {
        channel_ = std::move(ch);
        workers_ = workers;
        rr_ = 0;
    }

    std::shared_ptr<spmc_channel> channel_;
    int workers_ = 0;
    int rr_ = 0;
    int victim_ = -1;
};

struct farm_options {
    std::size_t queue_capacity = default_queue_capacity;
    payload_policy broadcast_payloads = payload_policy::shared;
    bool ondemand = false; // deliver to the first worker with <= 1 queued task
    bool trace = false;
};

// Task-parallel worker pool. An optional emitter generates or schedules the
// tasks (default round robin); an optional collector gathers worker results
// onto the farm output stream. Without a collector the workers consolidate
// results in memory and their emitted items are discarded. wrap_around()
// routes the collector output (or the merged worker outputs) back to the
// emitter, outermost skeletons only.
class farm final : public skeleton_base, public detail::component {
public:
    explicit farm(farm_options opts = {});

    farm& add_emitter(std::shared_ptr<node> emitter);
    farm& add_worker(std::shared_ptr<node> worker);
    farm& add_worker(std::shared_ptr<pipeline> worker);
    farm& add_workers(std::vector<std::shared_ptr<node>> workers);
    farm& add_collector(std::shared_ptr<node> collector);
    farm& set_balancer(std::shared_ptr<load_balancer> balancer);
    farm& set_scheduling_ondemand(bool on = true);
    farm& wrap_around();

    load_balancer& balancer();

    std::size_t worker_count() const noexcept { return workers_.size(); }
    bool has_emitter() const noexcept { return emitter_ != nullptr; }
    bool has_collector() const noexcept { return collector_ != nullptr; }
    bool has_feedback() const noexcept { return feedback_; }
    bool ondemand() const noexcept { return opts_.ondemand; }
    std::size_t queue_capacity() const noexcept { return opts_.queue_capacity; }

    // internal wiring interface
    std::unique_ptr<detail::output_port> make_input_sink(detail::build_context& ctx) override;
    void adopt_input(std::unique_ptr<detail::input_port> in) override;
    void mark_feedback_head() override;
    void build(detail::build_context& ctx, std::unique_ptr<detail::output_port> out) override;

protected:
    detail::component& wiring() override { return *this; }
    void validate_runnable() const override;
    bool trace_flag() const override { return opts_.trace; }

private:
    void ensure_editable() const;
    void ensure_channel();

    std::shared_ptr<node> emitter_;
    std::shared_ptr<node> collector_;
    std::vector<std::shared_ptr<detail::component>> workers_;
    std::shared_ptr<load_balancer> lb_;
    farm_options opts_;
    bool feedback_ = false;
    bool head_marked_ = false;
    bool sink_issued_ = false;
    std::unique_ptr<detail::input_port> pending_in_;
    std::shared_ptr<spmc_channel> channel_;
};

} // namespace weft
