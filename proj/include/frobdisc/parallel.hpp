#pragma once

#include <cstddef>
#include <functional>

namespace frobdisc {

inline constexpr const char* kThreadsEnvVar = "FROBDISC_THREADS";

// Thread count: the FROBDISC_THREADS environment variable when set to a
// positive integer, else `requested` when positive, else hardware concurrency.
unsigned resolve_threads(unsigned requested = 0);

// Runs body(begin, end) over contiguous chunks of [0, count) on up to
// `threads` workers. Exceptions from workers are rethrown on the caller.
// Chunk boundaries depend only on count and chunk_size, never on threads.
void parallel_chunks(std::size_t count, std::size_t chunk_size, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace frobdisc
