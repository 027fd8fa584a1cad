/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "service.hpp"

#include <httplib.h>
#include <json.hpp>

namespace wgservice {

namespace {

using nlohmann::json;

struct Reply {
  int status;
  std::string body;
};

// Runs one JSON operation through the C API.
Reply call(wg_database *db, const char *op, const std::string &body) {
  char *out = nullptr;
  wg_status s = wg_request(db, op, body.c_str(), &out);
  if (s != WG_OK)
    return {http_status(s), wg_last_error_json()};
  Reply r{200, out};
  wg_string_free(out);
  return r;
}

void send(httplib::Response &res, const Reply &r) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

std::string with_id(const std::string &body, const std::string &id) {
  json j = body.empty() ? json::object() : json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    return std::string();
  j["id"] = id;
  return j.dump();
}

Reply bad_json() {
  json e = {{"code", "input_error"}, {"message", "request body must be a JSON object"}, {"details", json::array()}};
  return {422, e.dump()};
}

} // namespace

int http_status(wg_status s) {
  switch (s) {
  case WG_OK: return 200;
  case WG_ERR_INPUT: return 422;
  case WG_ERR_CONSTRAINT: return 422;
  case WG_ERR_NOT_FOUND: return 404;
  case WG_ERR_DATABASE: return 503;
  case WG_ERR_INTERNAL: return 500;
  }
  return 500;
}

Service::Service(wg_database *db, Options options)
    : db_(db), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  routes();
}

Service::~Service() {
  stop();
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(jobs_mutex_);
    workers.swap(workers_);
  }
  for (auto &w : workers)
    if (w.joinable())
      w.join();
}

bool Service::bind() {
  if (options_.port == 0) {
    port_ = server_->bind_to_any_port(options_.bind);
    return port_ > 0;
  }
  port_ = options_.port;
  return server_->bind_to_port(options_.bind, options_.port);
}

void Service::run() { server_->listen_after_bind(); }

void Service::stop() { server_->stop(); }

std::string Service::start_job(const std::string &body) {
  std::lock_guard lock(jobs_mutex_);
  std::string id = "job" + std::to_string(next_job_++);
  jobs_[id] = Job{};
  workers_.emplace_back([this, id, body] {
    Reply r = call(db_, "analyze", body);
    std::lock_guard done(jobs_mutex_);
    jobs_[id] = Job{r.status == 200 ? "done" : "failed", r.body};
  });
  return id;
}

void Service::routes() {
  httplib::Server &s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", options_.cors_origin},
                         {"Access-Control-Allow-Headers", "Content-Type"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  s.Options(R"(.*)", [](const httplib::Request &, httplib::Response &res) { res.status = 204; });

  s.Get("/health", [this](const httplib::Request &, httplib::Response &res) { send(res, call(db_, "health", "")); });
  s.Get("/measures", [this](const httplib::Request &, httplib::Response &res) {
    send(res, call(db_, "measures", ""));
  });
  s.Get("/verify", [this](const httplib::Request &, httplib::Response &res) { send(res, call(db_, "verify", "")); });
  for (const char *op : {"similarity", "word_stats", "ic", "suggest", "correlate"}) {
    std::string path = std::string("/") + op;
    s.Post(path, [this, op](const httplib::Request &req, httplib::Response &res) {
      send(res, call(db_, op, req.body));
    });
  }

  s.Post("/analyze", [this](const httplib::Request &req, httplib::Response &res) {
    if (req.get_param_value("wait") == "true") {
      Reply r = call(db_, "analyze", req.body);
      if (r.status != 200)
        return send(res, r);
      json j = {{"job", nullptr}, {"status", "done"}, {"result", json::parse(r.body)}};
      return send(res, {200, j.dump()});
    }
    std::string id = start_job(req.body);
    send(res, {202, json{{"job", id}, {"status", "running"}}.dump()});
  });
  s.Get(R"(/analyze/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
    const std::string id = req.matches[1];
    std::lock_guard lock(jobs_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) {
      json e = {{"code", "not_found"}, {"message", "unknown job '" + id + "'"}, {"details", json::array()}};
      return send(res, {404, e.dump()});
    }
    json j = {{"job", id}, {"status", it->second.status}};
    if (it->second.status == "done")
      j["result"] = json::parse(it->second.result);
    else if (it->second.status == "failed")
      j["error"] = json::parse(it->second.result);
    send(res, {200, j.dump()});
  });

  s.Post("/session", [this](const httplib::Request &req, httplib::Response &res) {
    Reply r = call(db_, "session.create", req.body.empty() ? "{}" : req.body);
    if (r.status == 200)
      r.status = 201;
    send(res, r);
  });
  s.Get(R"(/session/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
    send(res, call(db_, "session.get", json{{"id", req.matches[1].str()}}.dump()));
  });
  s.Post(R"(/session/([^/]+)/propose)", [this](const httplib::Request &req, httplib::Response &res) {
    std::string body = with_id(req.body, req.matches[1].str());
    send(res, body.empty() ? bad_json() : call(db_, "session.propose", body));
  });
  s.Post(R"(/session/([^/]+)/decision)", [this](const httplib::Request &req, httplib::Response &res) {
    std::string body = with_id(req.body, req.matches[1].str());
    send(res, body.empty() ? bad_json() : call(db_, "session.decide", body));
  });
}

} // namespace wgservice
