#pragma once

#include <stdexcept>
#include <string>

namespace mmi {

/// Bad argument or violated precondition.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// The waveguide model cannot represent the requested device faithfully
/// (port profile too wide, mode cutoff too low, singular raw matrix).
class ModelBreakdown : public std::runtime_error {
public:
    explicit ModelBreakdown(const std::string& what) : std::runtime_error(what) {}
};

/// Evolution lost more norm than unitarization residue can explain.
class UnitarityViolation : public std::runtime_error {
public:
    explicit UnitarityViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mmi
