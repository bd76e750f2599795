#pragma once

namespace weft {

enum class pin_status { ok, unsupported, error };

// Number of hardware execution contexts, at least 1.
int core_count() noexcept;

// Restricts the calling thread to the given core. Returns `unsupported` on
// platforms without an affinity API; `error` for an out-of-range cpu_id or
// a failed syscall.
pin_status pin_thread(int cpu_id) noexcept;

} // namespace weft
