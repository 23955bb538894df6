#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

namespace flagforge {

// Every kernel that fans out over independent items takes an Execution
// argument. The serial path is the reference implementation the tests
// compare the OpenMP path against.
enum class Execution { serial, parallel };

void set_thread_count(int threads);
int thread_count();

namespace detail {

class ExceptionSlot {
 public:
  void capture() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace detail

// Calls fn(i) for i in [0, n). Order of calls is unspecified in parallel
// mode; callers write to disjoint slots and reduce afterwards.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn, Execution ex = Execution::parallel) {
  if (ex == Execution::serial || n < 2 || thread_count() == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  detail::ExceptionSlot slot;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      slot.capture();
    }
  }
  slot.rethrow();
}

// Index-ordered map: result[i] = fn(i), independent of the schedule.
template <class T, class Fn>
std::vector<T> map_indices(std::size_t n, Fn&& fn, Execution ex = Execution::parallel) {
  std::vector<T> out(n);
  for_each_index(n, [&](std::size_t i) { out[i] = fn(i); }, ex);
  return out;
}

}  // namespace flagforge
