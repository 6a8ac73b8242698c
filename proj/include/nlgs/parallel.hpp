#ifndef NLGS_PARALLEL_HPP
#define NLGS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace nlgs {

/// Worker count used by row-parallel kernels. Defaults to NLGS_THREADS or 1.
unsigned thread_count() noexcept;
void set_thread_count(unsigned n) noexcept;

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on each.
/// Callers must make per-item results independent of the chunking, so the
/// output is identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace nlgs

#endif
