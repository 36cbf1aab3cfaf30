#pragma once

#include <stdexcept>
#include <string>

namespace shockwave {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad configuration file or override (CLI exit code 2).
class ConfigError : public Error {
  public:
    using Error::Error;
};

// A caller violated an operation's precondition: invalid parameter, grid,
// domain, or missing samples (CLI exit code 4).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// Runtime numerical failure: loss of hyperbolicity, NaN/Inf, degenerate
// fit data, characteristic escaping the grid (CLI exit code 3).
class NumericError : public Error {
  public:
    using Error::Error;
};

// Loss of strict hyperbolicity, 1 + v^p dropped to the floor. Carries the
// offending value.
class HyperbolicityLoss : public NumericError {
  public:
    HyperbolicityLoss(double v, int p)
        : NumericError("hyperbolicity loss: 1 + v^p <= floor at v = " + std::to_string(v) +
                       ", p = " + std::to_string(p)),
          v_(v),
          p_(p) {}
    double v() const { return v_; }
    int p() const { return p_; }

  private:
    double v_;
    int p_;
};

}  // namespace shockwave
