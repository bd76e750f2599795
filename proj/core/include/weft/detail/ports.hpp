#pragma once

#include "weft/channels.hpp"
#include "weft/detail/backoff.hpp"
#include "weft/item.hpp"
#include "weft/node.hpp"
#include "weft/spsc_queue.hpp"

#include <memory>
#include <utility>

namespace weft::detail {

// Single-consumer view of a node's input stream. `closed` is sticky: once
// the end-of-stream mark has been observed, every later call reports closed.
class input_port {
public:
    virtual ~input_port() = default;
    virtual poll_status try_recv(item& out) = 0;
};

// Single-producer view of a node's output stream. try_send moves from `v`
// only when it returns ok. close() delivers end-of-stream and is idempotent.
class output_port {
public:
    virtual ~output_port() = default;
    virtual push_status try_send(item& v) = 0;
    virtual void close() = 0;
};

class spsc_input : public input_port {
public:
    explicit spsc_input(std::shared_ptr<spsc_queue<item>> q) : q_(std::move(q)) {}
    poll_status try_recv(item& out) override {
        if (closed_) return poll_status::closed;
        if (!q_->try_pop(out)) return poll_status::empty;
        if (out.is_eos()) {
            closed_ = true;
            return poll_status::closed;
        }
        return poll_status::ready;
    }

private:
    std::shared_ptr<spsc_queue<item>> q_;
    bool closed_ = false;
};

class spsc_output : public output_port {
public:
    explicit spsc_output(std::shared_ptr<spsc_queue<item>> q) : q_(std::move(q)) {}
    push_status try_send(item& v) override {
        return q_->try_push(v) ? push_status::ok : push_status::full;
    }
    void close() override {
        if (closed_) return;
        closed_ = true;
        item mark = item::eos();
        backoff b;
        while (!q_->try_push(mark)) b.pause();
    }

private:
    std::shared_ptr<spsc_queue<item>> q_;
    bool closed_ = false;
};

// Fan-in endpoint for the single consumer of an mpsc_channel.
class mpsc_input : public input_port {
public:
    explicit mpsc_input(std::shared_ptr<mpsc_channel> ch) : ch_(std::move(ch)) {}
    poll_status try_recv(item& out) override { return ch_->collect(out); }

private:
    std::shared_ptr<mpsc_channel> ch_;
};

// One producer's endpoint into an mpsc_channel.
class mpsc_leg_output : public output_port {
public:
    mpsc_leg_output(std::shared_ptr<mpsc_channel> ch, std::size_t producer)
        : ch_(std::move(ch)), producer_(producer) {}
    push_status try_send(item& v) override { return ch_->produce(producer_, v); }
    void close() override { ch_->close_producer(producer_); }

private:
    std::shared_ptr<mpsc_channel> ch_;
    std::size_t producer_;
};

// One consumer's endpoint of an spmc_channel.
class spmc_leg_input : public input_port {
public:
    spmc_leg_input(std::shared_ptr<spmc_channel> ch, std::size_t consumer)
        : ch_(std::move(ch)), consumer_(consumer) {}
    poll_status try_recv(item& out) override { return ch_->consume(consumer_, out); }

private:
    std::shared_ptr<spmc_channel> ch_;
    std::size_t consumer_;
};

// Swallows everything: workers of a farm without a collector consolidate
// results in memory, so their emitted items are dropped here.
class null_output : public output_port {
public:
    push_status try_send(item& v) override {
        item sink = std::move(v);
        (void)sink;
        return push_status::ok;
    }
    void close() override {}
};

// Blocking send with a retry budget; counts failed attempts into *retries
// when provided.
inline send_status send_with_retry(output_port& out, item& v,
                                   std::uint64_t retry_limit,
                                   std::uint32_t wait_ticks,
                                   std::uint64_t* retries) {
    if (out.try_send(v) == push_status::ok) return send_status::ok;
    for (std::uint64_t attempt = 0; attempt < retry_limit; ++attempt) {
        if (retries) ++*retries;
        wait_ticks_then_yield(wait_ticks);
        if (out.try_send(v) == push_status::ok) return send_status::ok;
    }
    return send_status::failed;
}

} // namespace weft::detail
