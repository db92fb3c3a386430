#pragma once

#include <cstddef>
#include <functional>

namespace normgeom {

/// Upper bound on worker threads used by sampling loops. Results never depend
/// on this value.
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Calls task(i) for every i in [0, count), spread over at most max_threads()
/// workers. Each task must write only to its own slot.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace normgeom
