#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace purisheaf {

/// A mathematical failure raised by one of the library modules. The module
/// name is carried along so front ends can report where the error originated.
class MathError : public std::runtime_error {
 public:
  MathError(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

class DegreeBudgetExceeded : public MathError {
 public:
  explicit DegreeBudgetExceeded(std::string module)
      : MathError(std::move(module), "degree budget exceeded") {}
};

/// Malformed textual input. `offset` is a byte offset into the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

inline constexpr int kDefaultDegreeBudget = 512;

}  // namespace purisheaf
