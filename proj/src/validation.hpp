// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Cross-representation and oracle checks. The full scale is the acceptance
// suite; the reduced scale backs the CLI "validate" command.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace vortexscat
{
enum class SuiteScale
{
    reduced,
    full,
};

struct CheckResult
{
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

using CheckCallback = std::function<void(CheckResult const&)>;

struct CheckInfo
{
    int id;
    char const* name;
};

//! Identifiers and names of every check, in run order.
std::vector<CheckInfo> check_catalog();

//! Run one check by id (1-based).
CheckResult run_check(int id, SuiteScale scale);

//! Run every check in order, reporting each as it completes.
std::vector<CheckResult> run_suite(SuiteScale scale, CheckCallback const& report = {});

}  // namespace vortexscat
