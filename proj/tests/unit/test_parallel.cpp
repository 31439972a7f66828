#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "frobdisc/parallel.hpp"

using namespace frobdisc;

TEST(Parallel, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1001);
  parallel_chunks(hits.size(), 17, 4, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) hits[i]++;
  });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsWorkerException) {
  EXPECT_THROW(parallel_chunks(100, 10, 3,
                               [](std::size_t b, std::size_t) {
                                 if (b == 50) throw std::runtime_error("boom");
                               }),
               std::runtime_error);
}

TEST(Parallel, EnvironmentOverride) {
  ::setenv(kThreadsEnvVar, "3", 1);
  EXPECT_EQ(resolve_threads(8), 3u);
  ::setenv(kThreadsEnvVar, "junk", 1);
  EXPECT_EQ(resolve_threads(5), 5u);
  ::unsetenv(kThreadsEnvVar);
  EXPECT_EQ(resolve_threads(2), 2u);
  EXPECT_GE(resolve_threads(0), 1u);
}
