#pragma once

#include <stdexcept>
#include <string>

namespace cfs {

// Raised when an adaptive integration fails to reach the requested
// tolerance within the allowed number of subdivisions. Carries the best
// available estimate so callers can decide whether to use it anyway.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double best_value, double achieved_error)
        : std::runtime_error(what), best_value_(best_value), achieved_error_(achieved_error) {}

    double best_value() const { return best_value_; }
    double achieved_error() const { return achieved_error_; }

  private:
    double best_value_;
    double achieved_error_;
};

}  // namespace cfs
