#pragma once

#include "weft/accelerator.hpp"
#include "weft/farm.hpp"
#include "weft/node.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace weft {

// Data-parallel matrix-product map realized as a farm: a splitter partitions
// each incoming task, the workers compute partial products, a composer
// rebuilds the result matrix and emits the task once every partial arrived.
// Square matrices, row-major storage.

template <typename Scalar>
struct map_task {
    int n = 0;
    std::vector<Scalar> a, b, c; // n*n each
    int tag = 0;

    static map_task make(int n, int tag) {
        map_task t;
        t.n = n;
        t.tag = tag;
        t.a.assign(static_cast<std::size_t>(n) * n, Scalar{});
        t.b.assign(static_cast<std::size_t>(n) * n, Scalar{});
        t.c.assign(static_cast<std::size_t>(n) * n, Scalar{});
        return t;
    }

    Scalar& a_at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    Scalar& b_at(int i, int j) { return b[static_cast<std::size_t>(i) * n + j]; }
    Scalar& c_at(int i, int j) { return c[static_cast<std::size_t>(i) * n + j]; }
    const Scalar& c_at(int i, int j) const { return c[static_cast<std::size_t>(i) * n + j]; }
};

// element grain: one subtask per (i, j) cell, the reference behavior.
// row_block grain: one subtask per contiguous row range, one range per
// worker (coarser stream traffic, same result).
enum class map_grain { element, row_block };

template <typename Scalar>
struct sub_task {
    int i = 0;       // cell row, or first row of a block
    int j = 0;       // cell column, or one-past-last row of a block
    int expected = 0; // partials that complete the parent task
    bool rows = false;
    bool notice = false; // empty-task completion notice (n == 0)
    map_task<Scalar>* parent = nullptr;
};

template <typename Scalar>
struct partial_result {
    int i = 0;
    int j = 0;
    Scalar x{};                   // element grain: c[i][j]
    std::vector<Scalar> row_data; // row_block grain: rows [i, j) of c
    int expected = 0;
    bool rows = false;
    bool notice = false;
    map_task<Scalar>* parent = nullptr;
};

// All subtasks of one map task under the given grain. A 0x0 task yields a
// single completion notice so it can never wedge the composer.
template <typename Scalar>
std::vector<sub_task<Scalar>> split_subtasks(map_task<Scalar>& task,
                                             map_grain grain = map_grain::element,
                                             int worker_hint = 1) {
    std::vector<sub_task<Scalar>> subs;
    if (task.n == 0) {
        sub_task<Scalar> st;
        st.expected = 1;
        st.notice = true;
        st.parent = &task;
        subs.push_back(st);
        return subs;
    }
    if (grain == map_grain::element) {
        const int expected = task.n * task.n;
        subs.reserve(static_cast<std::size_t>(expected));
        for (int i = 0; i < task.n; ++i)
            for (int j = 0; j < task.n; ++j)
                subs.push_back({i, j, expected, false, false, &task});
        return subs;
    }
    // row_block: as many subtasks as workers, never more than rows
    const int blocks = std::max(1, std::min(worker_hint, task.n));
    const int per = (task.n + blocks - 1) / blocks;
    for (int r0 = 0; r0 < task.n; r0 += per) {
        const int r1 = std::min(task.n, r0 + per);
        subs.push_back({r0, r1, 0, true, false, &task});
    }
    const int expected = static_cast<int>(subs.size());
    for (auto& st : subs) st.expected = expected;
    return subs;
}

// Inner product of row i of A and column j of B.
template <typename Scalar>
partial_result<Scalar> compute_partial(const sub_task<Scalar>& st) {
    const map_task<Scalar>& t = *st.parent;
    partial_result<Scalar> pr;
    pr.i = st.i;
    pr.j = st.j;
    pr.expected = st.expected;
    pr.parent = st.parent;
    if (st.notice) {
        pr.notice = true;
        return pr;
    }
    if (st.rows) {
        pr.rows = true;
        pr.row_data.assign(static_cast<std::size_t>(st.j - st.i) * t.n, Scalar{});
        for (int i = st.i; i < st.j; ++i)
            for (int j = 0; j < t.n; ++j) {
                Scalar acc{};
                for (int k = 0; k < t.n; ++k)
                    acc += t.a[static_cast<std::size_t>(i) * t.n + k] *
                           t.b[static_cast<std::size_t>(k) * t.n + j];
                pr.row_data[static_cast<std::size_t>(i - st.i) * t.n + j] = acc;
            }
        return pr;
    }
    Scalar acc{};
    for (int k = 0; k < t.n; ++k)
        acc += t.a[static_cast<std::size_t>(st.i) * t.n + k] *
               t.b[static_cast<std::size_t>(k) * t.n + st.j];
    pr.x = acc;
    return pr;
}

// Consolidation bookkeeping, one entry per in-flight tag. Kept apart from
// the collector node so arrival-order tests can drive it directly.
template <typename Scalar>
class composer_state {
public:
    // Writes the partial into its parent and returns the parent exactly when
    // the last expected partial arrives; nullptr otherwise. A partial seen
    // twice for the same in-flight tag is a duplicate and throws.
    map_task<Scalar>* accept(partial_result<Scalar>& pr) {
        auto& e = inflight_[pr.parent->tag];
        const long key = pr.notice ? -1 : static_cast<long>(pr.i) * (pr.parent->n + 1) + pr.j;
        if (!e.seen.insert(key).second)
            throw std::logic_error("map composer: duplicate partial for tag " +
                                   std::to_string(pr.parent->tag));
        if (!pr.notice) {
            map_task<Scalar>& t = *pr.parent;
            if (pr.rows) {
                std::copy(pr.row_data.begin(), pr.row_data.end(),
                          t.c.begin() + static_cast<std::size_t>(pr.i) * t.n);
            } else {
                t.c[static_cast<std::size_t>(pr.i) * t.n + pr.j] = pr.x;
            }
        }
        if (static_cast<int>(e.seen.size()) == pr.expected) {
            map_task<Scalar>* done = pr.parent;
            inflight_.erase(done->tag);
            return done;
        }
        return nullptr;
    }

    std::size_t inflight() const noexcept { return inflight_.size(); }

private:
    struct entry {
        std::unordered_set<long> seen;
    };
    std::unordered_map<int, entry> inflight_;
};

namespace detail_map {

template <typename Scalar>
class split_node final : public node {
public:
    split_node(map_grain grain, int worker_hint)
        : grain_(grain), worker_hint_(worker_hint) {}

    svc_result service(item input, node_context& ctx) override {
        auto* task = *input.template get<map_task<Scalar>*>();
        for (auto& st : split_subtasks(*task, grain_, worker_hint_))
            ctx.send_out(item::of(st));
        return svc_result::go_on();
    }

private:
    map_grain grain_;
    int worker_hint_;
};

template <typename Scalar>
class product_node final : public node {
public:
    svc_result service(item input, node_context&) override {
        auto st = input.template take<sub_task<Scalar>>();
        return svc_result::emit(item::of(compute_partial(st)));
    }
};

template <typename Scalar>
class compose_node final : public node {
public:
    svc_result service(item input, node_context&) override {
        auto pr = input.template take<partial_result<Scalar>>();
        if (map_task<Scalar>* done = state_.accept(pr))
            return svc_result::emit(item::of(done));
        return svc_result::go_on();
    }

private:
    composer_state<Scalar> state_;
};

} // namespace detail_map

struct map_options {
    int workers = 1;
    map_grain grain = map_grain::element;
    std::size_t queue_capacity = default_queue_capacity;
    bool trace = false;
};

template <typename Scalar>
class map_skeleton {
public:
    explicit map_skeleton(map_options opts) : opts_(opts) {
        if (opts_.workers < 1)
            throw std::invalid_argument("map_skeleton: needs at least one worker");
    }

    // The farm realizing the map; usable as a pipeline stage. Items flowing
    // in and out carry map_task<Scalar>* payloads.
    std::shared_ptr<farm> as_farm() {
        if (farm_) return farm_;
        farm_options fo;
        fo.queue_capacity = opts_.queue_capacity;
        fo.trace = opts_.trace;
        farm_ = std::make_shared<farm>(fo);
        farm_->add_emitter(
            std::make_shared<detail_map::split_node<Scalar>>(opts_.grain, opts_.workers));
        for (int i = 0; i < opts_.workers; ++i)
            farm_->add_worker(std::make_shared<detail_map::product_node<Scalar>>());
        farm_->add_collector(std::make_shared<detail_map::compose_node<Scalar>>());
        return farm_;
    }

    // Runs every task to completion (C = A x B); completion order may differ
    // from submission order, the returned vector keeps the input order.
    std::vector<map_task<Scalar>> run(std::vector<map_task<Scalar>> tasks) {
        std::unordered_set<int> tags;
        for (const auto& t : tasks)
            if (!tags.insert(t.tag).second)
                throw std::invalid_argument("map_skeleton: duplicate tag " +
                                            std::to_string(t.tag));

        accelerator acc(as_farm());
        acc.run_then_freeze();
        for (auto& t : tasks) acc.offload(item::of(&t));
        acc.offload_eos();

        std::size_t completed = 0;
        item out;
        while (acc.load_result(out) == load_status::item) {
            ++completed;
            out.reset();
        }
        const run_report rep = acc.wait();
        if (!rep.ok)
            throw std::runtime_error("map_skeleton: run failed: " + rep.error);
        if (completed != tasks.size())
            throw std::runtime_error("map_skeleton: lost tasks in flight");
        return tasks;
    }

private:
    map_options opts_;
    std::shared_ptr<farm> farm_;
};

} // namespace weft
