#pragma once

#include <stdexcept>
#include <string>

namespace hyptube {

enum class ErrorKind {
  Domain,            // argument outside the operation's domain
  Branch,            // logarithm branch condition violated
  NotInTube,         // point is not in the horocycle Grauert tube
  Numerical,         // iterative method failed to converge
  Accuracy,          // quadrature / series could not reach its tolerance
  RouteUnavailable,  // transform route outside its validity guard
  Partition,         // nodal counting could not isolate the boundary
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an adaptive method runs out of budget. Carries the best
/// estimate obtained so far.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_re, double best_im,
                double error_estimate)
      : Error(ErrorKind::Accuracy, what),
        best_re_(best_re),
        best_im_(best_im),
        error_estimate_(error_estimate) {}

  double best_re() const noexcept { return best_re_; }
  double best_im() const noexcept { return best_im_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_re_;
  double best_im_;
  double error_estimate_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace hyptube
