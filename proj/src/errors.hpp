// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace vortexscat
{
//! Failure categories shared by every module; the C API maps them 1:1 onto
//! status codes.
enum class ErrorCode
{
    invalid_argument,
    domain,
    kinematically_closed,
    no_zero,
    undefined_orientation,
    not_converged,
    series_not_converged,
    singular,
    unsupported_transition,
    mismatched_charge,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

//! Quadrature ran out of nodes. Carries the last estimate and the gap between
//! the final two estimates.
class NotConvergedError : public Error
{
  public:
    NotConvergedError(std::string const& what,
                      std::complex<double> estimate,
                      double gap,
                      ErrorCode code = ErrorCode::not_converged)
        : Error(code, what), estimate_(estimate), gap_(gap)
    {
    }

    std::complex<double> estimate() const noexcept { return estimate_; }
    double gap() const noexcept { return gap_; }

  private:
    std::complex<double> estimate_;
    double gap_;
};

}  // namespace vortexscat
