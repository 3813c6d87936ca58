#pragma once

#include <stdexcept>
#include <string>

namespace twogal {

enum class ErrKind {
  InvalidInput,
  AmbientTooLarge,
  MissingGenerators,
  UnfaithfulTestSet,
  InconclusiveSampling,
  CapExceeded,
  Internal,
};

inline const char* to_string(ErrKind k) {
  switch (k) {
    case ErrKind::InvalidInput: return "InvalidInput";
    case ErrKind::AmbientTooLarge: return "AmbientTooLarge";
    case ErrKind::MissingGenerators: return "MissingGenerators";
    case ErrKind::UnfaithfulTestSet: return "UnfaithfulTestSet";
    case ErrKind::InconclusiveSampling: return "InconclusiveSampling";
    case ErrKind::CapExceeded: return "CapExceeded";
    case ErrKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrKind kind() const noexcept { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace twogal
