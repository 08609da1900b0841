#ifndef RAYFORGE_ERRORS_HPP_
#define RAYFORGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rayforge {

// Process exit codes; every thrown error carries one.
enum class Errc : int {
  ok = 0,
  tolerance_breach = 1,
  input_error = 2,
  validation_failure = 3,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail_input(const std::string& msg) {
  throw Error(Errc::input_error, msg);
}
[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(Errc::validation_failure, msg);
}
[[noreturn]] inline void fail_tolerance(const std::string& msg) {
  throw Error(Errc::tolerance_breach, msg);
}

}  // namespace rayforge

#endif  // RAYFORGE_ERRORS_HPP_
