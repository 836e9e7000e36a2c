#include "pcsp/errors.hpp"

namespace pcsp {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::MalformedStructure: return "MalformedStructure";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::BadParam: return "BadParam";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::OutOfRangeElement: return "OutOfRangeElement";
    case ErrorKind::ArityOrRangeMismatch: return "ArityOrRangeMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::DeadlineExceeded: return "DeadlineExceeded";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::NotAreaRare: return "NotAreaRare";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::CyclicPolymorphismExists: return "CyclicPolymorphismExists";
    case ErrorKind::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorKind::ChainSpaceCapExceeded: return "ChainSpaceCapExceeded";
    case ErrorKind::ValueTooLarge: return "ValueTooLarge";
    case ErrorKind::FragmentTooLarge: return "FragmentTooLarge";
    case ErrorKind::MinorLinkViolation: return "MinorLinkViolation";
    case ErrorKind::MissingXiEntry: return "MissingXiEntry";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IOError: return "IOError";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message, const std::vector<std::string>& diagnostics)
{
    std::string text(to_string(kind));
    text += ": ";
    text += message;
    for (const auto& d : diagnostics) {
        text += "\n  - ";
        text += d;
    }
    return text;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::vector<std::string> diagnostics) :
    std::runtime_error(compose(kind, message, diagnostics)), kind_(kind), diagnostics_(std::move(diagnostics))
{
}

}  // namespace pcsp
