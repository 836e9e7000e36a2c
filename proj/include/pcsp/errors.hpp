#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcsp {

enum class ErrorKind {
    MalformedStructure,
    UnknownName,
    BadParam,
    BadInput,
    BadArity,
    SizeCapExceeded,
    SignatureMismatch,
    OutOfRangeElement,
    ArityOrRangeMismatch,
    ArityMismatch,
    DomainMismatch,
    DeadlineExceeded,
    NotCyclic,
    NotAreaRare,
    NotAHomomorphism,
    CyclicPolymorphismExists,
    UndeclaredVariable,
    ChainSpaceCapExceeded,
    ValueTooLarge,
    FragmentTooLarge,
    MinorLinkViolation,
    MissingXiEntry,
    ParseError,
    ValidationError,
    IOError,
    InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type. The kind is
/// what callers branch on; `diagnostics` carries per-item detail when a
/// validator found more than one problem.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::vector<std::string> diagnostics = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

private:
    ErrorKind kind_;
    std::vector<std::string> diagnostics_;
};

}  // namespace pcsp
