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

#ifndef QOSMECH_TOOLS_COMMANDS_HPP
#define QOSMECH_TOOLS_COMMANDS_HPP

#include <iosfwd>

#include "config.hpp"

namespace qosmech::cli {

enum ExitCode : int
{
	exit_ok = 0,
	exit_config = 1,
	exit_violation = 2,
};

// Each command writes its primary output to cfg.output when set, otherwise
// to `out`. Diagnostics go to `err`.

int cmd_quote(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_overbook(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_figure_data(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace qosmech::cli

#endif // QOSMECH_TOOLS_COMMANDS_HPP
