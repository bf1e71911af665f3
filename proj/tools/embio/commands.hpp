// Copyright 2026 The embkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMBKIT_TOOLS_EMBIO_COMMANDS_HPP_
#define EMBKIT_TOOLS_EMBIO_COMMANDS_HPP_

namespace embio {

// Parses argv, runs one subcommand and returns the process exit code.
// Failures print a single `embio: error: <Code>: <detail>` line to stderr.
int run(int argc, char** argv);

}  // namespace embio

#endif  // EMBKIT_TOOLS_EMBIO_COMMANDS_HPP_
