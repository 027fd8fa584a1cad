/* Error type shared by every wordgraph module.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wordgraph {

enum class ErrorCode {
  Input = 1,       // bad arguments, unknown words, malformed user files
  Database = 2,    // unreadable or inconsistent lexical database / cache
  Constraint = 3,  // a domain rule is violated (noun minimums, x != y, ...)
  NotFound = 4,    // unknown session, job, candidate
  Internal = 5,
};

const char *to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }

  // Offending items (unknown words, nearest lexicon entries, ...).
  const std::vector<std::string> &details() const noexcept { return details_; }

private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

} // namespace wordgraph
