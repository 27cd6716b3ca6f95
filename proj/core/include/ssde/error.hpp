#ifndef SSDE_ERROR_HPP
#define SSDE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssde {

enum class Errc {
  Domain,                  // evaluation point outside the function's domain
  ShapeMismatch,           // functions with different breakpoints / node counts
  InvalidFunction,         // SegmentedFunction invariants violated
  Tiling,                  // sum |a_i| != 1
  ShiftMismatch,           // e_i inconsistent with the derived breakpoints
  DegenerateMap,           // a_i == 0
  ShearNotSupported,       // c != 0 in the general affine form
  DomainMismatch,          // function domain differs from the piecemealing's
  ArgumentOutOfRange,      // back-mapped argument beyond rounding tolerance
  NotExact,                // exact operation requested on float-only data
  LConditionViolated,
  NotContractive,
  NoAdmissibleA,
  InitialIntegralMismatch,
  Ordering,                // bump parameters not a < b < c < d
  NonConvergent,           // oracle refinement levels disagree
  Parse,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ssde

#endif  // SSDE_ERROR_HPP
