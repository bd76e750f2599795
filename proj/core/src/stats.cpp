#include "weft/stats.hpp"

#include <ostream>

namespace weft {

void write_stats(std::ostream& os, const std::vector<node_stats>& stats) {
    for (const auto& s : stats) {
        os << s.node_id << '\t' << s.items << '\t' << s.svc_ms << '\t'
           << (s.push_retries + s.pop_retries) << '\n';
    }
}

} // namespace weft
