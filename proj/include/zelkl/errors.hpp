#pragma once

#include <stdexcept>
#include <string>

namespace zelkl {

// Error taxonomy shared by the whole engine. The CLI maps these onto its
// exit codes: argument/validation/parse -> 2, resource limits -> 3.

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation precondition (rank mismatch, index out of range).
class ArgumentError : public Error {
public:
  using Error::Error;
};

// A value failed its own invariants during construction.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Malformed textual input (segment grammar, cache records, permutations).
class ParseError : public Error {
public:
  using Error::Error;
};

// A configurable rank/size ceiling was exceeded.
class ResourceLimitError : public Error {
public:
  using Error::Error;
};

// A fixed-width conversion would lose information. Exact arithmetic never
// wraps silently; it reports instead.
class OverflowError : public Error {
public:
  using Error::Error;
};

// The mechanized induction failed its own bookkeeping (round budget blown).
class InductionFailureError : public Error {
public:
  using Error::Error;
};

} // namespace zelkl
