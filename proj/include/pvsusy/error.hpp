#ifndef PVSUSY_ERROR_HPP
#define PVSUSY_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace pvsusy {

enum class ErrorKind {
    ParameterPole,
    NoConvergence,
    GammaPole,
    Domain,
    InvalidSpec,
    BranchDegeneracy,
    ChainAnnihilation,
    SingularEvaluation,
    JetOrderExceeded,
    SingularSuperpotential,
    TypeMismatch,
    InvalidLabel,
    EquationSingularity,
    DegenerateOutput,
    NotAvailable,
    InvalidConfig,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ParameterPole: return "parameter pole";
        case ErrorKind::NoConvergence: return "no convergence";
        case ErrorKind::GammaPole: return "gamma pole";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::InvalidSpec: return "invalid spec";
        case ErrorKind::BranchDegeneracy: return "branch degeneracy";
        case ErrorKind::ChainAnnihilation: return "chain annihilation";
        case ErrorKind::SingularEvaluation: return "singular evaluation";
        case ErrorKind::JetOrderExceeded: return "jet order exceeded";
        case ErrorKind::SingularSuperpotential: return "singular superpotential";
        case ErrorKind::TypeMismatch: return "type mismatch";
        case ErrorKind::InvalidLabel: return "invalid label";
        case ErrorKind::EquationSingularity: return "equation singularity";
        case ErrorKind::DegenerateOutput: return "degenerate output";
        case ErrorKind::NotAvailable: return "not available";
        case ErrorKind::InvalidConfig: return "invalid config";
    }
    return "unknown";
}

/// Every fatal failure in the library is raised as an Error carrying its kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace pvsusy

#endif  // PVSUSY_ERROR_HPP
