#include "weft/pipeline.hpp"

#include "weft/farm.hpp"

#include <stdexcept>

namespace weft {

pipeline::pipeline(pipeline_options opts) : opts_(opts) {}

void pipeline::ensure_editable() const {
    if (started_once_)
        throw std::logic_error("pipeline: cannot add stages after the run started");
}

pipeline& pipeline::add_stage(std::shared_ptr<node> stage) {
    ensure_editable();
    if (!stage) throw std::invalid_argument("pipeline: null stage");
    stages_.push_back(
        std::make_shared<detail::leaf_component>(std::move(stage), opts_.queue_capacity));
    return *this;
}

pipeline& pipeline::add_stage(std::shared_ptr<pipeline> stage) {
    ensure_editable();
    if (!stage) throw std::invalid_argument("pipeline: null stage");
    if (stage->has_feedback())
        throw std::invalid_argument(
            "pipeline: a skeleton with a feedback edge cannot be nested");
    stage->mark_nested();
    stages_.push_back(std::move(stage));
    return *this;
}

pipeline& pipeline::add_stage(std::shared_ptr<farm> stage) {
    ensure_editable();
    if (!stage) throw std::invalid_argument("pipeline: null stage");
    if (stage->has_feedback())
        throw std::invalid_argument(
            "pipeline: a skeleton with a feedback edge cannot be nested");
    stage->mark_nested();
    stages_.push_back(std::move(stage));
    return *this;
}

pipeline& pipeline::wrap_around() {
    if (nested())
        throw std::logic_error("wrap_around: only the outermost skeleton may carry feedback");
    feedback_ = true;
    return *this;
}

void pipeline::validate_runnable() const {
    if (stages_.empty())
        throw std::invalid_argument("pipeline: needs at least one stage");
}

std::unique_ptr<detail::output_port> pipeline::make_input_sink(detail::build_context& ctx) {
    if (stages_.empty())
        throw std::invalid_argument("pipeline: needs at least one stage");
    return stages_.front()->make_input_sink(ctx);
}

void pipeline::adopt_input(std::unique_ptr<detail::input_port> in) {
    if (stages_.empty())
        throw std::invalid_argument("pipeline: needs at least one stage");
    stages_.front()->adopt_input(std::move(in));
}

void pipeline::mark_feedback_head() {
    if (stages_.empty())
        throw std::invalid_argument("pipeline: needs at least one stage");
    stages_.front()->mark_feedback_head();
}

void pipeline::build(detail::build_context& ctx, std::unique_ptr<detail::output_port> out) {
    if (stages_.empty())
        throw std::invalid_argument("pipeline: needs at least one stage");

    std::unique_ptr<detail::output_port> feedback_sink;
    if (feedback_) {
        if (out)
            throw std::invalid_argument("pipeline: a feedback pipeline has no external output");
        feedback_sink = stages_.front()->make_input_sink(ctx);
        stages_.front()->mark_feedback_head();
    }

    const std::size_t k = stages_.size();
    for (std::size_t i = 0; i < k; ++i) {
        std::unique_ptr<detail::output_port> stage_out;
        if (i + 1 < k)
            stage_out = stages_[i + 1]->make_input_sink(ctx);
        else
            stage_out = feedback_ ? std::move(feedback_sink) : std::move(out);
        stages_[i]->build(ctx, std::move(stage_out));
    }
}

} // namespace weft
