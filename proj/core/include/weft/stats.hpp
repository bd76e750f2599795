#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace weft {

// Per-node counters gathered while tracing is enabled and aggregated after
// the run joins. Retries are failed queue attempts: push retries against a
// full downstream queue, pop retries against an empty input.
struct node_stats {
    int node_id = -1;
    std::uint64_t items = 0; // service invocations with a present input
    double svc_ms = 0.0;     // total time inside service()
    std::uint64_t push_retries = 0;
    std::uint64_t pop_retries = 0;
};

// One line per node: node_id<TAB>items<TAB>svc_ms<TAB>retries
void write_stats(std::ostream& os, const std::vector<node_stats>& stats);

} // namespace weft
