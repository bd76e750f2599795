#pragma once

// Stream-parallel skeletons for shared-memory multicores: pipelines and
// farms over lock-free bounded queues, accelerator offloading, and a
// farm-templated data-parallel map.

#include "weft/accelerator.hpp"
#include "weft/affinity.hpp"
#include "weft/channels.hpp"
#include "weft/farm.hpp"
#include "weft/item.hpp"
#include "weft/map.hpp"
#include "weft/node.hpp"
#include "weft/pipeline.hpp"
#include "weft/skeleton.hpp"
#include "weft/spsc_queue.hpp"
#include "weft/stats.hpp"
#include "weft/timing.hpp"
