#include "bergman/log_scalar.hpp"

#include <cstdio>

namespace bergman {

std::string LogScalar::to_string() const {
  if (sign_ == 0) return "0";
  char buf[64];
  if (const auto v = to_value()) {
    std::snprintf(buf, sizeof(buf), "%.15g", *v);
  } else if (sign_ > 0) {
    std::snprintf(buf, sizeof(buf), "exp(%.15g)", log_);
  } else {
    std::snprintf(buf, sizeof(buf), "-exp(%.15g)", log_);
  }
  return buf;
}

}  // namespace bergman
