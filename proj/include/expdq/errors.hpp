#pragma once

#include <stdexcept>
#include <string>

namespace expdq {

// Shape parameters make the basis constants numerically meaningless.
struct DegenerateShape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// The boundary-modified basis needs nodes 1, 2, N-1, N to play distinct roles.
struct TooFewNodes : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A pivot collapsed during tridiagonal elimination.
struct NotDominant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CoincidentNodes : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownProblem : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The system recovering derivative-constrained boundary values is singular.
struct SingularClosure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Time stepping produced a non-finite or divergent state.
struct NonFinite : std::runtime_error {
  int stage;    // 1-based stage index within the step
  double time;  // base time of the failing step
  NonFinite(const std::string& msg, int stage_, double time_)
      : std::runtime_error(msg), stage(stage_), time(time_) {}
};

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoExactSolution : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace expdq
