// Copyright 2026 The pulseshape Authors
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

#pragma once

#include <string>
#include <vector>

namespace pulseshape {

/// Shortest round-trip text for a double (17 significant digits, '.' decimal).
std::string format_double(double value);

/// RFC-4180 writer: CRLF line endings, fields quoted only when they contain
/// a comma, quote or line break. The file is written to a sibling temporary
/// and renamed into place so readers never observe a partial file.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Atomic whole-file write used for CSV and JSON artifacts alike.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace pulseshape
