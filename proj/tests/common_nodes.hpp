#pragma once

// Small node zoo shared by the skeleton tests and the acceptance suite.

#include <weft/node.hpp>

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace testing_nodes {

using weft::item;
using weft::node;
using weft::node_context;
using weft::svc_result;

// Emits the integers [first, last) in order, then ends the stream.
struct range_source final : node {
    range_source(int first, int last) : next(first), last(last) {}
    svc_result service(item, node_context&) override {
        if (next >= last) return svc_result::end();
        return svc_result::emit(item::of(next++));
    }
    int next, last;
};

// Collects every integer it receives; never emits.
struct int_sink final : node {
    svc_result service(item in, node_context&) override {
        got.push_back(*in.get<int>());
        return svc_result::go_on();
    }
    void on_end(node_context&) override { ended = true; }
    std::vector<int> got;
    bool ended = false;
};

// Forwards its input unchanged.
struct identity_stage final : node {
    svc_result service(item in, node_context&) override {
        return svc_result::emit(std::move(in));
    }
};

// Adds one to an integer task.
struct increment_worker final : node {
    svc_result service(item in, node_context&) override {
        int v = in.take<int>();
        return svc_result::emit(item::of(v + 1));
    }
};

// Classic sieve stage: keeps the first integer it sees, then forwards only
// the inputs that are not multiples of it.
struct sieve_stage final : node {
    svc_result service(item in, node_context&) override {
        const int v = *in.get<int>();
        if (prime == 0) {
            prime = v;
            return svc_result::go_on();
        }
        if (v % prime == 0) return svc_result::go_on();
        return svc_result::emit(std::move(in));
    }
    int prime = 0;
};

// Keeps only the first value it receives, discarding the rest.
struct first_keeper final : node {
    svc_result service(item in, node_context&) override {
        if (!seen) {
            first = *in.get<int>();
            seen = true;
        }
        return svc_result::go_on();
    }
    int first = 0;
    bool seen = false;
};

// Lifecycle probe wrapping optional behavior; records events into a shared
// mutex-guarded log as "<name>:init|svc|end".
struct probe_node final : node {
    probe_node(std::string name, std::shared_ptr<std::vector<std::string>> log,
               std::shared_ptr<std::mutex> mu,
               std::function<svc_result(item, node_context&)> svc = {})
        : name(std::move(name)), log(std::move(log)), mu(std::move(mu)),
          body(std::move(svc)) {}

    bool on_init(node_context&) override {
        push("init");
        return true;
    }
    svc_result service(item in, node_context& ctx) override {
        push("svc");
        if (body) return body(std::move(in), ctx);
        return svc_result::emit(std::move(in));
    }
    void on_end(node_context&) override { push("end"); }

    void push(const char* what) {
        std::lock_guard<std::mutex> lock(*mu);
        log->push_back(name + ":" + what);
    }

    std::string name;
    std::shared_ptr<std::vector<std::string>> log;
    std::shared_ptr<std::mutex> mu;
    std::function<svc_result(item, node_context&)> body;
};

} // namespace testing_nodes
