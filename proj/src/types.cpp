#include "pentabend/types.hpp"

#include <cmath>

namespace pentabend {

const char* to_string(SingularityType s) {
    switch (s) {
      case SingularityType::Regular: return "regular";
      case SingularityType::EllipticElliptic: return "elliptic-elliptic";
      case SingularityType::FocusFocus: return "focus-focus";
      case SingularityType::EllipticHyperbolic: return "elliptic-hyperbolic";
      case SingularityType::HyperbolicHyperbolic: return "hyperbolic-hyperbolic";
      case SingularityType::EllipticRegular: return "elliptic-regular";
      case SingularityType::HyperbolicRegular: return "hyperbolic-regular";
      case SingularityType::Degenerate: return "degenerate";
    }
    return "degenerate";
}

SingularityType singularity_type_from_string(const std::string& s) {
    for (SingularityType k : {SingularityType::Regular, SingularityType::EllipticElliptic,
                              SingularityType::FocusFocus, SingularityType::EllipticHyperbolic,
                              SingularityType::HyperbolicHyperbolic, SingularityType::EllipticRegular,
                              SingularityType::HyperbolicRegular, SingularityType::Degenerate}) {
        if (s == to_string(k)) return k;
    }
    throw ContractViolation("unknown singularity type string: " + s);
}

bool semitoric_admissible(SingularityType s) {
    switch (s) {
      case SingularityType::Regular:
      case SingularityType::EllipticElliptic:
      case SingularityType::FocusFocus:
      case SingularityType::EllipticRegular:
        return true;
      default:
        return false;
    }
}

double StarSolution::residual() const {
    const double e1 = a * b3 - t * (a4 * b3 - a3 * b4);
    const double e2 = a * b5 - (1.0 - t) * (a4 * b5 - a5 * b4);
    return std::max(std::abs(e1), std::abs(e2));
}

} // namespace pentabend
