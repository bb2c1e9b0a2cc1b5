#pragma once

#include <stdexcept>
#include <string>

namespace zassen {

enum class ErrorKind {
  Contract,       // caller broke a documented precondition
  TooLarge,       // a size cap was exceeded
  NotNormal,      // quotient by a non-normal subgroup
  NotElementary,  // quotient expected to be elementary abelian
  NotTransgressive,
  InvalidSystem,  // multiplicative system or defining system violates its axioms
  NotHomomorphism,
  Parse,
  UnknownId,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorKind::Contract, what);
}

}  // namespace zassen
