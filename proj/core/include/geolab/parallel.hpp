#pragma once

#include <functional>

namespace geolab {

/// Worker count: GEOLAB_THREADS if set and positive, otherwise the hardware
/// concurrency (at least 1).
int thread_limit();

/// Runs body(i) for i in [0, n). Each index is handled by exactly one
/// worker; callers write only to index-owned slots so results do not depend
/// on the thread count.
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace geolab
