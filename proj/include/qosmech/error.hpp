// Copyright 2026 The qosmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QOSMECH_ERROR_HPP
#define QOSMECH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qosmech {

/// A probability or report outside the domain a pricing function accepts.
class domain_error : public std::domain_error
{
public:
	using std::domain_error::domain_error;
};

/// Scheme parameters that make a closed form undefined.
class parameter_error : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/// A user supplied objective produced a non-finite value.
class evaluation_error : public std::runtime_error
{
public:
	evaluation_error(const std::string& what, double at)
	: std::runtime_error(what), at_(at)
	{
	}

	double at() const noexcept { return at_; }

private:
	double at_;
};

/// Malformed run or campaign configuration.
class config_error : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/// Ledger operations applied out of order.
class state_error : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

/// Two evaluation routes that must agree did not.
class consistency_error : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

} // namespace qosmech

#endif // QOSMECH_ERROR_HPP
