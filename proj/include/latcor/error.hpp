#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latcor {

enum class Errc {
  SingularMatrix,
  NotPositiveDefinite,
  NotSymmetric,
  IndefiniteForm,
  SingularForm,
  NotInDualLattice,
  GroupTooLarge,
  NotIntegral,
  EmptyConstraintSet,
  IncompleteTable,
  GroupMismatch,
  SearchTooLarge,
  ParseError,
  InvalidArgument,
  OracleMismatch,
};

constexpr std::string_view code_name(Errc code) {
  switch (code) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::IndefiniteForm: return "IndefiniteForm";
    case Errc::SingularForm: return "SingularForm";
    case Errc::NotInDualLattice: return "NotInDualLattice";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::EmptyConstraintSet: return "EmptyConstraintSet";
    case Errc::IncompleteTable: return "IncompleteTable";
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::SearchTooLarge: return "SearchTooLarge";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OracleMismatch: return "OracleMismatch";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace latcor
