// Copyright 2026 The TNG Authors.
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

#ifndef TNG_CLI_HPP
#define TNG_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tng::cli {

// Exit codes: 0 success, 2 config error, 3 numeric failure, 1 otherwise.
int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override);

int cmd_sweep(const std::string& config_path, const std::string& out_dir);

int cmd_plot(const std::vector<std::string>& trace_paths,
             const std::string& out_path, const std::string& x_axis);

int run_main(int argc, const char* const* argv);

}  // namespace tng::cli

#endif  // TNG_CLI_HPP
