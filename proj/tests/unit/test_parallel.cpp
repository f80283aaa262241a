#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "nonlocal/parallel.hpp"

using namespace nonlocal;

TEST_SUITE("parallel") {

TEST_CASE("every index visited once") {
  for (std::size_t count : {0, 1, 7, 1000}) {
    std::vector<std::atomic<int>> hits(count);
    parallel_for(count, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("worker exceptions reach the caller") {
  CHECK_THROWS_AS(parallel_for(100,
                               [](std::size_t i) {
                                 if (i == 57) throw std::domain_error("boom");
                               }),
                  std::domain_error);
}

TEST_CASE("thread count from the environment") {
  const char* old = std::getenv("NONLOCAL_THREADS");
  const std::string saved = old ? old : "";
  setenv("NONLOCAL_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("NONLOCAL_THREADS", "zero", 1);
  CHECK(worker_count() >= 1);
  setenv("NONLOCAL_THREADS", "-4", 1);
  CHECK(worker_count() >= 1);
  if (old) {
    setenv("NONLOCAL_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("NONLOCAL_THREADS");
  }
}

}  // TEST_SUITE
