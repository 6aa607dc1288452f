#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

inline constexpr const char* kVersion = "0.1.0";

// Three-valued verdict for every certificate and classifier in the library.
// Undetermined is an honest "the implemented criteria cannot decide", never
// an error; genuinely malformed inputs throw instead.
enum class Status { Holds, Fails, Undetermined };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    default: return "Undetermined";
  }
}

// Thrown when a classifier's mathematical precondition (e.g. a required
// Delta2 certificate) is not met. Distinct from std::invalid_argument,
// which covers malformed values; callers may map this to an Undetermined
// verdict with a note.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace orlicz
