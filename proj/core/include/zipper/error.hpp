// Exception types thrown by the zipper library.

#ifndef ZIPPER_ERROR_HPP_
#define ZIPPER_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zipper {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed PDB input. `line` is 1-based.
struct ParseError : Error {
  ParseError(std::size_t line_no, const std::string& msg)
    : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  std::size_t line;
};

/// Violates a structural invariant (duplicate atom, duplicate chain, ...).
struct StructureError : Error {
  using Error::Error;
};

/// Malformed CHAIN.RESNAMESEQ.ATOM text.
struct SelectorError : Error {
  using Error::Error;
};

struct NotFoundError : Error {
  using Error::Error;
};

/// Selector residue name disagrees with the residue present at that position.
struct MismatchError : Error {
  using Error::Error;
};

/// A value cannot be written in the fixed-column PDB format.
struct EmissionError : Error {
  using Error::Error;
};

/// Argument outside the mathematical domain of a function or parameter record.
struct DomainError : Error {
  using Error::Error;
};

/// Two atoms of an evaluated pair (nearly) coincide.
struct SingularityError : DomainError {
  using DomainError::DomainError;
};

struct ConfigError : Error {
  using Error::Error;
};

/// The objective failed (threw or returned NaN) at `point`.
struct EvaluationError : Error {
  EvaluationError(const std::string& msg, std::vector<double> at)
    : Error(msg), point(std::move(at)) {}
  std::vector<double> point;
};

/// Local refinement hit a non-finite value; `last_good` is the last finite iterate.
struct RefinementError : Error {
  RefinementError(const std::string& msg, std::vector<double> last)
    : Error(msg), last_good(std::move(last)) {}
  std::vector<double> last_good;
};

/// A pipeline stage failed; `stage` names it.
struct BuildError : Error {
  BuildError(std::string stage_name, const std::string& msg)
    : Error(stage_name + ": " + msg), stage(std::move(stage_name)) {}
  std::string stage;
};

} // namespace zipper

#endif
