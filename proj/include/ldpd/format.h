// Copyright 2026 The ldpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPD_FORMAT_H_
#define LDPD_FORMAT_H_

#include <string>

namespace ldpd {

// Shortest decimal text that parses back to the same double; locale free.
std::string FormatDouble(double value);

}  // namespace ldpd

#endif  // LDPD_FORMAT_H_
