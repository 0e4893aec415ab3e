#ifndef REGEN_ERROR_HPP_
#define REGEN_ERROR_HPP_

#include <cstdio>
#include <stdexcept>
#include <string>

namespace regen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature finished without reaching the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what + " (achieved relative tolerance " + format(achieved) + ")"), achieved_(achieved) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }
  double achieved_;
};

// No limit theorem covers the requested (model, statistic) combination.
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

// A simulated path or walk does not reach far enough for the requested functional.
class HorizonError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace regen

#endif  // REGEN_ERROR_HPP_
