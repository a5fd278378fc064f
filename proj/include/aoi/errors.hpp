#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NonPositiveRate : Error {
    using Error::Error;
};

struct CorrelationOutOfRange : Error {
    using Error::Error;
};

struct ProbabilityOutOfRange : Error {
    using Error::Error;
};

// A process no sensor ever reports on; its age grows without bound.
struct UncoveredProcess : Error {
    explicit UncoveredProcess(int process_index)
        : Error("process " + std::to_string(process_index) +
                " has zero total informative arrival rate"),
          process(process_index) {}
    int process;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct SingularSystem : Error {
    using Error::Error;
};

struct InvalidHorizon : Error {
    using Error::Error;
};

struct MonotonicityViolated : Error {
    using Error::Error;
};

struct InfeasibleBox : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct InvalidSweepParameter : Error {
    using Error::Error;
};

struct ConfigParseError : Error {
    using Error::Error;
};

} // namespace aoi
