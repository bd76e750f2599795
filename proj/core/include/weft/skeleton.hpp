#pragma once

#include "weft/detail/component.hpp"
#include "weft/node.hpp"
#include "weft/stats.hpp"

#include <iosfwd>
#include <memory>
#include <vector>

namespace weft {

// Run bookkeeping shared by pipeline and farm: executing a build to
// completion, wall/work clocks and trace aggregation.
class skeleton_base {
public:
    virtual ~skeleton_base() = default;

    // Builds the topology, spawns one thread per node, drives the stream to
    // end-of-stream and joins everything. Blocking.
    run_report run_and_wait_end();

    // Wall time of the whole run, lifecycle hooks included. Throws
    // std::logic_error before a completed run.
    double total_time_ms() const;
    // Busiest node's service window (first service entry to last service
    // exit), hooks excluded; 0 for a run that never serviced anything.
    double work_time_ms() const;

    // Per-node counters of the last run; empty unless tracing was enabled.
    std::vector<node_stats> last_stats() const;
    // One line per node when tracing was on, otherwise a notice.
    void dump_stats(std::ostream& os) const;

    bool completed() const noexcept { return completed_; }
    bool nested() const noexcept { return nested_; }
    void mark_nested() noexcept { nested_ = true; }

protected:
    virtual detail::component& wiring() = 0;
    virtual void validate_runnable() const = 0;
    virtual bool trace_flag() const = 0;

    friend class accelerator;

    std::unique_ptr<detail::run_state> state_;
    std::vector<std::unique_ptr<detail::node_runner>> runners_;
    bool nested_ = false;
    bool completed_ = false;
    bool started_once_ = false;
    double total_ms_ = 0.0;
    double work_ms_ = 0.0;
};

} // namespace weft
