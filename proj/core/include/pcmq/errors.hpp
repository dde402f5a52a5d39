#pragma once

#include <stdexcept>
#include <string>

namespace pcmq {

/// Thrown when a requested tolerance cannot be certified at binary64.
/// `achieved` carries the best bound the routine could guarantee.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace pcmq
