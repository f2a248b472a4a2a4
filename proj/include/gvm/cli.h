/*
 * Copyright 2026 The jpeg-gvm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GVM_CLI_H_
#define GVM_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace gvm {

// Process exit statuses of the jpeg_gvm tool.
enum ExitStatus : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitFormat = 2,    // unreadable input, unsupported JPEG, bad arguments
  kExitCapacity = 3,  // payload does not fit
  kExitExtract = 4,   // mapping, extraction or verification failure
};

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace gvm

#endif  // GVM_CLI_H_
