#pragma once

#include <stdexcept>
#include <string>

namespace pinning {

enum class ErrorKind {
  config,        ///< invalid law, parameter, grid or manifest
  numeric,       ///< a quantity required by the request is infinite or undefined
  inconclusive,  ///< statistics could not resolve the question at the given budget
  budget,        ///< request exceeds a configured size limit
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::config, what);
}

}  // namespace pinning
