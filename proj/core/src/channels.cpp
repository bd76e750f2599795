#include "weft/channels.hpp"

#include "weft/detail/backoff.hpp"

#include <stdexcept>
#include <string>

namespace weft {

namespace {

void blocking_push(spsc_queue<item>& q, item v) {
    detail::backoff b;
    while (!q.try_push(v)) b.pause();
}

} // namespace

// ---------------------------------------------------------------- spmc ----

spmc_channel::spmc_channel(std::size_t consumers, std::size_t capacity,
                           payload_policy broadcast_payloads)
    : consumer_closed_(consumers, 0), policy_(broadcast_payloads) {
    if (consumers == 0)
        throw std::invalid_argument("spmc_channel: need at least one consumer");
    legs_.reserve(consumers);
    for (std::size_t i = 0; i < consumers; ++i)
        legs_.push_back(std::make_unique<spsc_queue<item>>(capacity));
}

push_status spmc_channel::dispatch(item& v) {
    const std::size_t target = rr_;
    if (!legs_[target]->try_push(v)) return push_status::full;
    rr_ = (rr_ + 1) % legs_.size();
    return push_status::ok;
}

push_status spmc_channel::dispatch_to(std::size_t target, item& v) {
    if (target >= legs_.size())
        throw std::out_of_range("spmc_channel: worker index " + std::to_string(target) +
                                " out of range");
    return legs_[target]->try_push(v) ? push_status::ok : push_status::full;
}

void spmc_channel::broadcast(item v) {
    const std::size_t n = legs_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        item copy = policy_ == payload_policy::shared ? v.share() : v.clone();
        blocking_push(*legs_[i], std::move(copy));
    }
    blocking_push(*legs_[n - 1], std::move(v)); // last consumer takes the original
}

void spmc_channel::close() {
    if (closed_) return;
    closed_ = true;
    for (auto& leg : legs_) blocking_push(*leg, item::eos());
}

int spmc_channel::try_on_demand_pick(std::size_t threshold) const noexcept {
    for (std::size_t i = 0; i < legs_.size(); ++i)
        if (legs_[i]->size_approx() <= threshold) return static_cast<int>(i);
    return -1;
}

std::size_t spmc_channel::on_demand_pick(std::size_t threshold) const noexcept {
    detail::backoff b;
    for (;;) {
        const int i = try_on_demand_pick(threshold);
        if (i >= 0) return static_cast<std::size_t>(i);
        b.pause();
    }
}

std::size_t spmc_channel::pending(std::size_t consumer) const {
    if (consumer >= legs_.size())
        throw std::out_of_range("spmc_channel: consumer index out of range");
    return legs_[consumer]->size_approx();
}

poll_status spmc_channel::consume(std::size_t consumer, item& out) {
    if (consumer >= legs_.size())
        throw std::out_of_range("spmc_channel: consumer index out of range");
    if (consumer_closed_[consumer]) return poll_status::closed;
    if (!legs_[consumer]->try_pop(out)) return poll_status::empty;
    if (out.is_eos()) {
        consumer_closed_[consumer] = 1;
        return poll_status::closed;
    }
    return poll_status::ready;
}

// ---------------------------------------------------------------- mpsc ----

mpsc_channel::mpsc_channel(std::size_t producers, std::size_t capacity)
    : producer_closed_(producers, 0), leg_drained_(producers, 0) {
    if (producers == 0)
        throw std::invalid_argument("mpsc_channel: need at least one producer");
    legs_.reserve(producers);
    for (std::size_t i = 0; i < producers; ++i)
        legs_.push_back(std::make_unique<spsc_queue<item>>(capacity));
}

push_status mpsc_channel::produce(std::size_t producer, item& v) {
    if (producer >= legs_.size())
        throw std::out_of_range("mpsc_channel: producer index out of range");
    return legs_[producer]->try_push(v) ? push_status::ok : push_status::full;
}

void mpsc_channel::close_producer(std::size_t producer) {
    if (producer >= legs_.size())
        throw std::out_of_range("mpsc_channel: producer index out of range");
    if (producer_closed_[producer]) return;
    producer_closed_[producer] = 1;
    blocking_push(*legs_[producer], item::eos());
}

poll_status mpsc_channel::collect(item& out) {
    const std::size_t n = legs_.size();
    const std::size_t start = poll_start_;
    poll_start_ = (poll_start_ + 1) % n;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = (start + k) % n;
        if (leg_drained_[i]) continue;
        if (!legs_[i]->try_pop(out)) continue;
        if (out.is_eos()) {
            leg_drained_[i] = 1;
            ++drained_count_;
            continue;
        }
        return poll_status::ready;
    }
    return drained_count_ == n ? poll_status::closed : poll_status::empty;
}

// ---------------------------------------------------------------- mpmc ----

mpmc_channel::mpmc_channel(std::size_t producers, std::size_t consumers,
                           std::size_t capacity)
    : in_(producers, capacity), out_(consumers, capacity) {}

push_status mpmc_channel::produce(std::size_t producer, item& v) {
    return in_.produce(producer, v);
}

void mpmc_channel::close_producer(std::size_t producer) {
    in_.close_producer(producer);
}

poll_status mpmc_channel::consume(std::size_t consumer, item& out) {
    return out_.consume(consumer, out);
}

bool mpmc_channel::pump_once() {
    if (done_) return false;
    if (!holding_) {
        switch (in_.collect(held_)) {
        case poll_status::closed:
            out_.close();
            done_ = true;
            return true;
        case poll_status::empty:
            return false;
        case poll_status::ready:
            holding_ = true;
            break;
        }
    }
    if (out_.dispatch(held_) == push_status::ok) {
        holding_ = false;
        return true;
    }
    return false;
}

void mpmc_channel::pump_until_closed() {
    detail::backoff b;
    while (!done_) {
        if (pump_once()) b.reset();
        else b.pause();
    }
}

} // namespace weft
