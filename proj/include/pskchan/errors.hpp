#pragma once

#include <stdexcept>
#include <string>

namespace pskchan {

/// The requested Fock truncation cannot hold the state to tolerance.
class truncation_error : public std::runtime_error {
public:
    explicit truncation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Adaptive quadrature did not reach its target error estimate.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& msg, double achieved_error)
        : std::runtime_error(msg), achieved_error_(achieved_error) {}

    double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

/// An outcome distribution violated positivity beyond floating-point noise.
class probability_error : public std::runtime_error {
public:
    explicit probability_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pskchan
