#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperplan {

enum class Errc {
  Syntax,
  UnboundPathVar,
  QuantifierNotInPrefix,
  DuplicateQuantifier,
  EmptyAlphabet,
  InvalidModel,
  UndefinedTransition,
  EmptyGrid,
  NoFreeCell,
  UnboundedOperator,
  MissingPathVar,
  WitnessPathUndefined,
  PrefixUnsupported,
  UnknownAtom,
  AlternationUnsupported,
  UnknownLabel,
  EmptyInitialSet,
  TraceOffGrid,
  BadSpec,
  Io,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, std::vector<std::string> expected, const std::string& found);
  std::size_t position() const noexcept { return pos_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t pos_;
  std::vector<std::string> expected_;
};

/// A strategy left the partial transition function at step `time()`.
class UndefinedTransition : public Error {
 public:
  explicit UndefinedTransition(int t)
      : Error(Errc::UndefinedTransition, "no transition at step " + std::to_string(t)), t_(t) {}
  int time() const noexcept { return t_; }

 private:
  int t_;
};

}  // namespace hyperplan
