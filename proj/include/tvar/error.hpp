#pragma once

#include <stdexcept>
#include <string>

namespace tvar {

enum class ErrorKind {
    Validation,
    RankMismatch,
    SpaceMismatch,
    NotPointed,
    NotARay,
    OutsideDualCone,
    TailMismatch,
    FaceNotCovered,
    NotProjective,
    Unsupported,
    IrreducibleFactorOutsideGroundField,
    MembershipViolation,
    NotInSRho,
    PhiNotInPhiE,
    ZeroPhi,
    ContextMismatch,
    NotInteriorPoint,
    NotBigDivisor,
    VerificationFailed,
    NotStandardForm,
};

inline const char *error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::NotARay: return "NotARay";
    case ErrorKind::OutsideDualCone: return "OutsideDualCone";
    case ErrorKind::TailMismatch: return "TailMismatch";
    case ErrorKind::FaceNotCovered: return "FaceNotCovered";
    case ErrorKind::NotProjective: return "NotProjective";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::IrreducibleFactorOutsideGroundField: return "IrreducibleFactorOutsideGroundField";
    case ErrorKind::MembershipViolation: return "MembershipViolation";
    case ErrorKind::NotInSRho: return "NotInSRho";
    case ErrorKind::PhiNotInPhiE: return "PhiNotInPhiE";
    case ErrorKind::ZeroPhi: return "ZeroPhi";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotInteriorPoint: return "NotInteriorPoint";
    case ErrorKind::NotBigDivisor: return "NotBigDivisor";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotStandardForm: return "NotStandardForm";
    }
    return "Unknown";
}

/// The single exception type thrown by the library; `kind()` carries the category.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind), detail_(what)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    /// The message without the kind prefix.
    const std::string &detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// Three-valued verdict for questions the base curve cannot always decide.
enum class Tri { False, True, Unknown };

inline Tri tri_of(bool b) { return b ? Tri::True : Tri::False; }

inline Tri tri_and(Tri a, Tri b)
{
    if (a == Tri::False || b == Tri::False)
        return Tri::False;
    if (a == Tri::Unknown || b == Tri::Unknown)
        return Tri::Unknown;
    return Tri::True;
}

inline const char *tri_name(Tri t)
{
    switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
    }
    return "unknown";
}

} // namespace tvar
