#include "modelset/parallel.hpp"

#include <cstdlib>
#include <string>

namespace modelset {

namespace {

unsigned threads_from_env() {
  const char* env = std::getenv("MODELSET_THREADS");
  if (env == nullptr) return 1;
  try {
    long v = std::stol(env);
    return v > 0 ? static_cast<unsigned>(v) : 1U;
  } catch (...) {
    return 1;
  }
}

std::atomic<unsigned>& budget() {
  static std::atomic<unsigned> value{threads_from_env()};
  return value;
}

}  // namespace

unsigned thread_budget() { return budget().load(); }

void set_thread_budget(unsigned threads) { budget().store(threads == 0 ? 1U : threads); }

}  // namespace modelset
