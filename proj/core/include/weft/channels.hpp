#pragma once

#include "weft/item.hpp"
#include "weft/spsc_queue.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace weft {

enum class push_status { ok, full };
enum class poll_status { ready, empty, closed };

// How a broadcast duplicates one payload across consumers: extra references
// to a payload that must then be treated as immutable, or deep copies.
enum class payload_policy { shared, cloned };

// Single dispatcher fanning items out to k consumers, one SPSC leg per
// consumer. Per-consumer FIFO order is inherited from the legs. A round
// robin cursor drives the default dispatch; explicit-index dispatch and
// broadcast are the other two delivery rules.
class spmc_channel {
public:
    spmc_channel(std::size_t consumers, std::size_t capacity,
                 payload_policy broadcast_payloads = payload_policy::shared);

    std::size_t consumers() const noexcept { return legs_.size(); }

    // -- dispatcher side (exactly one thread) --

    // Round robin delivery; the cursor advances only on ok.
    push_status dispatch(item& v);
    push_status dispatch(item&& v) { return dispatch(v); }

    // Delivery to an explicit consumer. Throws std::out_of_range.
    push_status dispatch_to(std::size_t target, item& v);
    push_status dispatch_to(std::size_t target, item&& v) { return dispatch_to(target, v); }

    // Delivers one reference/copy to every consumer, blocking per leg until
    // space is available.
    void broadcast(item v);

    // End-of-stream to every consumer; blocking, idempotent.
    void close();

    // Lowest-indexed consumer whose pending queue length is <= threshold,
    // or -1 when none qualifies right now.
    int try_on_demand_pick(std::size_t threshold = 1) const noexcept;
    // Blocking form: retries until some consumer qualifies.
    std::size_t on_demand_pick(std::size_t threshold = 1) const noexcept;

    std::size_t pending(std::size_t consumer) const;

    // -- consumer side (one thread per index) --
    poll_status consume(std::size_t consumer, item& out);

private:
    std::vector<std::unique_ptr<spsc_queue<item>>> legs_;
    std::vector<char> consumer_closed_; // each byte touched only by its consumer
    payload_policy policy_;
    std::size_t rr_ = 0;
    bool closed_ = false;
};

// m producers feeding one collector, one SPSC leg per producer. Per-producer
// order is preserved; the cross-producer interleaving is whatever the fair
// poll happens to observe. Each producer closes its own leg; the collector
// sees `closed` only after every producer has.
class mpsc_channel {
public:
    mpsc_channel(std::size_t producers, std::size_t capacity);

    std::size_t producers() const noexcept { return legs_.size(); }

    // -- producer side (one thread per index) --
    push_status produce(std::size_t producer, item& v);
    push_status produce(std::size_t producer, item&& v) { return produce(producer, v); }
    // That producer's end-of-stream; blocking, idempotent per producer.
    void close_producer(std::size_t producer);

    // -- collector side (exactly one thread) --
    // Fair poll: the scan start index rotates on every call so no producer
    // can starve the others.
    poll_status collect(item& out);

private:
    std::vector<std::unique_ptr<spsc_queue<item>>> legs_;
    std::vector<char> producer_closed_;
    std::vector<char> leg_drained_;  // collector-side: EOS observed
    std::size_t poll_start_ = 0;
    std::size_t drained_count_ = 0;
};

// m producers, k consumers: an MPSC feeding an SPMC through a pump that one
// arbiter thread drives. No cross-producer order is promised, conservation
// and per-producer order are.
class mpmc_channel {
public:
    mpmc_channel(std::size_t producers, std::size_t consumers, std::size_t capacity);

    push_status produce(std::size_t producer, item& v);
    push_status produce(std::size_t producer, item&& v) { return produce(producer, v); }
    void close_producer(std::size_t producer);

    poll_status consume(std::size_t consumer, item& out);

    // Moves at most one queued element from the fan-in to the fan-out.
    // Returns true when it made progress. Single pumper thread.
    bool pump_once();
    // Convenience loop for a dedicated arbiter thread: pumps until the
    // fan-in closes and the close has been forwarded.
    void pump_until_closed();
    bool closed() const noexcept { return done_; }

private:
    mpsc_channel in_;
    spmc_channel out_;
    item held_;
    bool holding_ = false;
    bool done_ = false;
};

} // namespace weft
