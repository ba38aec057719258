#ifndef FISHER_ERRORS_HPP_
#define FISHER_ERRORS_HPP_

#include <stdexcept>

namespace fisher {

// Domain errors: the inputs violate a stated precondition.
struct NegativeRadicand : std::domain_error { using std::domain_error::domain_error; };
struct NoFeasibleEpsPrime : std::domain_error { using std::domain_error::domain_error; };
struct UnsupportedDimension : std::domain_error { using std::domain_error::domain_error; };
struct NonpositiveTime : std::domain_error { using std::domain_error::domain_error; };
struct UnsupportedFamily : std::domain_error { using std::domain_error::domain_error; };
struct OutOfRegime : std::domain_error { using std::domain_error::domain_error; };
struct NonpositiveField : std::domain_error { using std::domain_error::domain_error; };
struct InfeasibleParams : std::domain_error { using std::domain_error::domain_error; };
struct RangeViolation : std::domain_error { using std::domain_error::domain_error; };
struct RadiusOutOfRange : std::domain_error { using std::domain_error::domain_error; };
struct DegenerateInterval : std::domain_error { using std::domain_error::domain_error; };

// Runtime errors: something went wrong while computing.
struct StabilityViolation : std::runtime_error { using std::runtime_error::runtime_error; };
struct IntegrationFailure : std::runtime_error { using std::runtime_error::runtime_error; };
struct BracketFailure : std::runtime_error { using std::runtime_error::runtime_error; };
struct InsufficientSnapshots : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingSnapshot : std::runtime_error { using std::runtime_error::runtime_error; };
struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace fisher

#endif  // FISHER_ERRORS_HPP_
