#pragma once

#include <stdexcept>
#include <string>

namespace bsa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundsError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct StructureError : Error { using Error::Error; };
struct InadmissibleCount : Error { using Error::Error; };
struct PreconditionFail : Error { using Error::Error; };
struct NotFound : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
// an ingredient spec fails the existence conditions it is searched under
struct InadmissibleSpec : Error { using Error::Error; };
// design parameters fail the necessary congruences
struct InadmissibleParams : Error { using Error::Error; };
// the congruences hold but the design is proven not to exist
struct KnownNonexistent : Error { using Error::Error; };

// raised when a cited-external ingredient cannot be produced; `chain` lists
// the ingredient specs from the outermost request down to the failing one
struct IngredientUnavailable : Error {
    std::string chain;
    explicit IngredientUnavailable(const std::string& spec)
        : Error("ingredient unavailable: " + spec), chain(spec) {}
    IngredientUnavailable(const std::string& outer, const IngredientUnavailable& inner)
        : Error("ingredient unavailable: " + outer + " <- " + inner.chain),
          chain(outer + " <- " + inner.chain) {}
};

} // namespace bsa
