#pragma once

#include <stdexcept>
#include <string>

namespace equiloci {

/// Mathematical-domain failures surfaced by the library. The CLI maps these to exit code 3.
enum class Err {
    NonNegativePoint,
    CoincidentPoints,
    IsotropicInput,
    NotParabolic,
    DegenerateSpan,
    FocusInput,
    NotOnBisector,
    OnComplexSpine,
    OnRealSpine,
    NotOnComplexSpine,
    DependentBasis,
    NotOnAllBisectors,
    ConfocalFamily,
    NotALinearFamily,
    EmptyBaseRegion,
    IsLinearFamily,
    CollinearTriple,
    MixedSignature,
    NonGenericFamily,
    InsufficientSamples,
    UnexpectedDimension,
    SpanIsLinearFamily,
    NotAZeroDivisor,
    RankDeficient,
    IllConditioned,
    NotABisector,
};

const char* err_name(Err e);

class MathError : public std::runtime_error {
  public:
    MathError(Err code, const std::string& detail)
        : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) { throw MathError(code, detail); }

}  // namespace equiloci
