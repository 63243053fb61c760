#pragma once

#include <stdexcept>
#include <string>

namespace gwt {

enum class Errc {
  IllegalFamily,
  IllegalDim,
  GlueNotBelow,
  ArityMismatch,
  BoundaryMismatch,
  BoundaryDisagreement,
  ComponentMismatch,
  DimMismatch,
  TreeMismatch,
  ZeroDim,
  NotAdmissible,
  NotParallel,
  OutsideFragment,
  SyntaxError,
  SemanticError,
  Internal,
};

const char* errcName(Errc c) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errcName(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace gwt
