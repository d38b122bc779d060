#include "ballcomp/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ballcomp {

int thread_budget() {
  const char* env = std::getenv("BALLCOMP_THREADS");
  long v = 0;
  if (env && *env) {
    try {
      v = std::stol(env);
    } catch (...) {
      v = 0;
    }
  }
  if (v <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
  return static_cast<int>(v);
}

}
