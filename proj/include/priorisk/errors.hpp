#pragma once

#include <stdexcept>
#include <string>

namespace priorisk {

// Raised when an exhaustive loop (datasets, learners, hypercube members)
// would exceed its configured cap.
struct EnumerationTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a packing or separation carries a metric we cannot verify.
struct UnsupportedMetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an index-set argument is too small to carry information
// (e.g. a single-member packing handed to a multi-hypothesis bound).
struct DegenerateIndexSet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a loss matrix or instance has no actions.
struct EmptyActionSet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace priorisk
