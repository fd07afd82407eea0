#pragma once

#include <stdexcept>
#include <string>

namespace legdef {

enum class Errc {
    arity_mismatch,
    not_divisible,
    tangent_not_y0,
    not_in_chart,
    conormal_undefined,
    not_symplectic,
    not_automorphism,
    chart_lost,
    leaves_chart,
    not_contact,
    beta0_not_admissible,
    not_saturated,
    diverging,
    parse_error,
    invariant_violation,
    domain_error,
    internal_error,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::arity_mismatch: return "ArityMismatch";
        case Errc::not_divisible: return "NotDivisible";
        case Errc::tangent_not_y0: return "TangentNotY0";
        case Errc::not_in_chart: return "NotInChart";
        case Errc::conormal_undefined: return "ConormalUndefined";
        case Errc::not_symplectic: return "NotSymplectic";
        case Errc::not_automorphism: return "NotAutomorphism";
        case Errc::chart_lost: return "ChartLost";
        case Errc::leaves_chart: return "LeavesChart";
        case Errc::not_contact: return "NotContact";
        case Errc::beta0_not_admissible: return "Beta0NotAdmissible";
        case Errc::not_saturated: return "NotSaturated";
        case Errc::diverging: return "Diverging";
        case Errc::parse_error: return "ParseError";
        case Errc::invariant_violation: return "InvariantViolation";
        case Errc::domain_error: return "DomainError";
        case Errc::internal_error: return "InternalError";
    }
    return "InternalError";
}

/* Process exit classes: 2 = input/validation, 3 = computation, 4 = internal. */
inline int errc_exit_class(Errc c) {
    switch (c) {
        case Errc::parse_error:
        case Errc::invariant_violation:
        case Errc::arity_mismatch:
        case Errc::tangent_not_y0:
        case Errc::not_in_chart:
        case Errc::not_symplectic:
        case Errc::not_automorphism:
        case Errc::chart_lost:
        case Errc::beta0_not_admissible:
        case Errc::domain_error:
            return 2;
        case Errc::not_divisible:
        case Errc::conormal_undefined:
        case Errc::leaves_chart:
        case Errc::not_contact:
        case Errc::not_saturated:
        case Errc::diverging:
            return 3;
        default:
            return 4;
    }
}

}  // namespace legdef
