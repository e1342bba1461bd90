// Common scalar/array aliases and the error type used across the library.
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace rwave {

using Array = Eigen::ArrayXd;
using ArrayRef = Eigen::Ref<const Eigen::ArrayXd>;
using Index = Eigen::Index;

inline constexpr double kFourPi = 4.0 * EIGEN_PI;

enum class ErrorKind { Config, Compute, Io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_config(const std::string& msg) { throw Error(ErrorKind::Config, msg); }
[[noreturn]] inline void fail_compute(const std::string& msg) { throw Error(ErrorKind::Compute, msg); }
[[noreturn]] inline void fail_io(const std::string& msg) { throw Error(ErrorKind::Io, msg); }

}  // namespace rwave
