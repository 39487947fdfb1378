// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace extremaldep {

// Bad user input: dimensions, negative tau, malformed partitions, ...
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A quantity was requested outside the region where the model defines it
// (e.g. a cluster-size function known only on finitely many rays).
class insufficient_model_data : public std::runtime_error {
public:
    explicit insufficient_model_data(const std::string& what) : std::runtime_error(what) {}
};

// A Monte Carlo run produced a degenerate intermediate (empty cell,
// probability estimate of exactly 0 or 1) so no finite estimate exists.
class calibration_error : public std::runtime_error {
public:
    explicit calibration_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace extremaldep
