#pragma once

#include "weft/detail/ports.hpp"
#include "weft/detail/runner.hpp"

#include <memory>
#include <vector>

namespace weft::detail {

struct build_context {
    run_state* state = nullptr;
    int next_id = 0;
    std::vector<std::unique_ptr<node_runner>> runners;
};

// Internal wiring interface shared by leaf nodes and skeletons. A parent
// connects a producer to a child by asking for its input sink, or hands the
// child a ready-made input port (farm workers read their dispatch legs);
// build() then materializes the runners.
class component {
public:
    virtual ~component() = default;

    // Upstream-facing sink; creates the component's input edge. At most one
    // of make_input_sink / adopt_input per build, before build().
    virtual std::unique_ptr<output_port> make_input_sink(build_context& ctx) = 0;
    virtual void adopt_input(std::unique_ptr<input_port> in) = 0;

    // The component sits at the head of a feedback cycle in the next build.
    virtual void mark_feedback_head() = 0;

    // Spawns no threads yet: creates runners into ctx. `out` may be null
    // (sink, or results consolidated in memory).
    virtual void build(build_context& ctx, std::unique_ptr<output_port> out) = 0;
};

// A user node occupying one place in a topology.
class leaf_component final : public component {
public:
    leaf_component(std::shared_ptr<node> n, std::size_t in_capacity)
        : node_(std::move(n)), in_capacity_(in_capacity) {}

    std::unique_ptr<output_port> make_input_sink(build_context&) override {
        auto edge = std::make_shared<spsc_queue<item>>(in_capacity_);
        pending_in_ = std::make_unique<spsc_input>(edge);
        return std::make_unique<spsc_output>(edge);
    }

    void adopt_input(std::unique_ptr<input_port> in) override {
        pending_in_ = std::move(in);
    }

    void mark_feedback_head() override { feedback_head_ = true; }

    void build(build_context& ctx, std::unique_ptr<output_port> out) override {
        runner_options opts;
        opts.feedback_head = feedback_head_;
        ctx.runners.push_back(std::make_unique<node_runner>(
            node_, std::move(pending_in_), std::move(out), ctx.next_id++, opts,
            ctx.state));
        feedback_head_ = false;
    }

private:
    std::shared_ptr<node> node_;
    std::size_t in_capacity_;
    std::unique_ptr<input_port> pending_in_;
    bool feedback_head_ = false;
};

} // namespace weft::detail
