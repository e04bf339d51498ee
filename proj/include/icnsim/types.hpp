#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace icnsim {

/// Identifier in the global data-ID space [0, n_p). Unit of caching and requesting.
using ObjectId = std::uint32_t;
/// Network-wide unique router identifier.
using RouterId = std::uint32_t;
/// AS-level identifier (arbitrary non-negative values, e.g. from CAIDA exports).
using AsId = std::uint32_t;

class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (AS-link files, snapshots, traces, configs).
class ParseError : public SimError {
public:
    using SimError::SimError;
};

/// Structural constraint violated (connectivity, ranges, capacities, ...).
class ValidationError : public SimError {
public:
    using SimError::SimError;
};

/// No route between the given endpoints, or unknown endpoint.
class RoutingError : public SimError {
public:
    using SimError::SimError;
};

/// Bad or incomplete run configuration.
class ConfigError : public SimError {
public:
    using SimError::SimError;
};

/// Undefined statistic (zero denominator, all-zero utilization, ...).
class MetricError : public SimError {
public:
    using SimError::SimError;
};

} // namespace icnsim
