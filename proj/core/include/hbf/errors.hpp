// SPDX-License-Identifier: Apache-2.0
//
// hybridbf - hybrid RF beamforming with phase shifter and switch networks
// Copyright (C) 2026 The hybridbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HBF_ERRORS_HPP
#define HBF_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hbf {

// Violated dimension or range precondition (N not divisible by M, rho > 1, ...).
class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine could not produce a trustworthy result.
// The Monte-Carlo engine attaches the trial index before rethrowing.
class NumericalError : public std::runtime_error
{
public:
    explicit NumericalError(const std::string &what, std::optional<std::size_t> trial = std::nullopt)
        : std::runtime_error(what), trial_(trial) {}

    std::optional<std::size_t> trial() const noexcept { return trial_; }

private:
    std::optional<std::size_t> trial_;
};

class SingularMatrixError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class NotPsdError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

} // namespace hbf

#endif
