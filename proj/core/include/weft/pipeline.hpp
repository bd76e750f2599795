#pragma once

#include "weft/detail/component.hpp"
#include "weft/node.hpp"
#include "weft/skeleton.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace weft {

class farm;

struct pipeline_options {
    std::size_t queue_capacity = default_queue_capacity; // per internal edge
    bool trace = false;
};

// Ordered stage composition S1 -> ... -> Sk. Consecutive stages are joined
// by one SPSC edge each; stages may themselves be farms or pipelines. When
// wrap_around() routed the last stage back into the first, the pipeline is
// a feedback loop and must stay the outermost skeleton.
class pipeline final : public skeleton_base, public detail::component {
public:
    explicit pipeline(pipeline_options opts = {});

    pipeline& add_stage(std::shared_ptr<node> stage);
    pipeline& add_stage(std::shared_ptr<pipeline> stage);
    pipeline& add_stage(std::shared_ptr<farm> stage);

    // Routes the last stage's output to the first stage's input. Only the
    // outermost skeleton may carry the feedback edge.
    pipeline& wrap_around();

    bool has_feedback() const noexcept { return feedback_; }
    std::size_t stage_count() const noexcept { return stages_.size(); }
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

    std::vector<std::shared_ptr<detail::component>> stages_;
    pipeline_options opts_;
    bool feedback_ = false;
};

} // namespace weft
