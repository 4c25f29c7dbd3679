#pragma once

#include <exception>

namespace bkit::detail {

// OpenMP map over [0, count) capturing the first exception and rethrowing it
// after the join; exceptions must not unwind out of a parallel region.
template <typename Body>
void parallel_for(int count, const Body& body) {
  std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(bkit_parallel_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

template <typename Body>
void serial_for(int count, const Body& body) {
  for (int i = 0; i < count; ++i) body(i);
}

}  // namespace bkit::detail
