#pragma once
#include <stdexcept>
#include <string>

namespace xlab {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace xlab
