#pragma once

#include <cstddef>
#include <functional>

namespace peerreview {

/// Name of the environment variable that caps worker threads.
inline constexpr const char* kThreadsEnv = "PEERREVIEW_THREADS";

/// Worker count: $PEERREVIEW_THREADS if set and positive, otherwise
/// std::thread::hardware_concurrency().
unsigned default_thread_count();

/// Calls body(i) for every i in [0, n) on up to `threads` workers. Each
/// index is visited exactly once; callers write to slot i and reduce in
/// index order afterwards, so results do not depend on the worker count.
/// Calls made from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = default_thread_count());

}  // namespace peerreview
