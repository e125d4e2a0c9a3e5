/* Copyright 2026 The wavechar Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

namespace wavechar {

/// Entry point behind the `wavechar` binary, separated so tests can drive
/// the command line in-process. Returns the process exit status: 0 on
/// success, 1 on input errors (bad files, flags, ids), 2 on numeric
/// failures. Diagnostics go to stderr; data goes to stdout or --output.
int cli_main(int argc, const char* const* argv);

}  // namespace wavechar
