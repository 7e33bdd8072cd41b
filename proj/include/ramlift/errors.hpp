#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ramlift {

enum class Errc {
  malformed_input,
  property_one_violation,
  property_two_violation,
  dimension_mismatch,
  not_in_hash_stabilizer,
  malformed_word,
  parameter_mismatch,
  division_by_zero_polynomial,
  zero_polynomial,
  indeterminate_form,
  construction_failed,
  uncertified_cover,
  base_point_not_fixed,
  not_admissible,
  bracketing_failed,
  hom_constraint_violated,
  orientation_reversing,
  out_of_domain,
  chart_unavailable,
  not_a_group,
  mismatch_detected,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::malformed_input: return "MalformedInput";
    case Errc::property_one_violation: return "PropertyOneViolation";
    case Errc::property_two_violation: return "PropertyTwoViolation";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_in_hash_stabilizer: return "NotInHashStabilizer";
    case Errc::malformed_word: return "MalformedWord";
    case Errc::parameter_mismatch: return "ParameterMismatch";
    case Errc::division_by_zero_polynomial: return "DivisionByZeroPolynomial";
    case Errc::zero_polynomial: return "ZeroPolynomial";
    case Errc::indeterminate_form: return "IndeterminateForm";
    case Errc::construction_failed: return "ConstructionFailed";
    case Errc::uncertified_cover: return "UncertifiedCover";
    case Errc::base_point_not_fixed: return "BasePointNotFixed";
    case Errc::not_admissible: return "NotAdmissible";
    case Errc::bracketing_failed: return "BracketingFailed";
    case Errc::hom_constraint_violated: return "HomConstraintViolated";
    case Errc::orientation_reversing: return "OrientationReversing";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::chart_unavailable: return "ChartUnavailable";
    case Errc::not_a_group: return "NotAGroup";
    case Errc::mismatch_detected: return "MismatchDetected";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Property-two failures also report the offending (1-based) vertex.
class PropertyTwoError : public Error {
 public:
  PropertyTwoError(std::size_t index, const std::string& what)
      : Error(Errc::property_two_violation, what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace ramlift
