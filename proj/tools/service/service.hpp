/* HTTP/JSON facade over the C API: measure queries, asynchronous analysis
 * jobs and ideation sessions.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph.h"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace wgservice {

struct Options {
  std::string bind = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string cors_origin = "*";
};

/// HTTP status for a wg_status failure.
int http_status(wg_status s);

class Service {
public:
  /// `db` stays owned by the caller and must outlive the service.
  Service(wg_database *db, Options options);
  ~Service();
  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  /// Binds the socket; returns false when the address is unavailable.
  bool bind();
  int port() const { return port_; }
  /// Serves until stop(). Call bind() first.
  void run();
  void stop();

private:
  struct Job {
    std::string status = "running";  // running | done | failed
    std::string result;              // JSON
  };

  void routes();
  std::string start_job(const std::string &body);

  wg_database *db_;
  Options options_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = 0;

  std::mutex jobs_mutex_;
  std::map<std::string, Job> jobs_;
  std::vector<std::thread> workers_;
  std::size_t next_job_ = 1;
};

} // namespace wgservice
