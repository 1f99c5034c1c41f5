#include "excursion/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace excursion {

unsigned worker_count() {
  if (const char* env = std::getenv("EXCURSION_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 256) {
      throw std::runtime_error("EXCURSION_THREADS must be an integer in [1, 256], got '" +
                               std::string(env) + "'");
    }
    return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

void parallel_for_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n_chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_chunks || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load() && first_error) std::rethrow_exception(first_error);
}

}  // namespace excursion
