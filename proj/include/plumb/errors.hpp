// Error taxonomy shared by all modules.

#pragma once

#include <stdexcept>
#include <string>

namespace plumb {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// graph
struct SyntaxError : Error { using Error::Error; };
struct DuplicateVertex : Error { using Error::Error; };
struct UnknownVertexInEdge : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct NotATree : Error { using Error::Error; };
struct PatternMismatch : Error { using Error::Error; };

// lattice / exact linear algebra
struct SingularBlock : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct NotAdmissible : Error { using Error::Error; };

// chardata
struct NotHighDegree : Error { using Error::Error; };

// ratfunc / gausswrt
struct PoleAtInput : Error { using Error::Error; };
struct LevelTooSmall : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };

// hblock
struct RadiusTooClose : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// asymptotic
struct OrderTooLarge : Error { using Error::Error; };
struct OrderAmbiguous : Error { using Error::Error; };
struct CalibrationFailed : Error { using Error::Error; };
struct ConditionViolated : Error { using Error::Error; };

struct UsageError : Error { using Error::Error; };

} // namespace plumb
