#pragma once

#include <atomic>
#include <memory>
#include <string>

#include "seatplan/builtin.hpp"
#include "seatplan/constructor.hpp"
#include "seatplan/generator.hpp"
#include "seatplan/ils.hpp"
#include "seatplan/io.hpp"

namespace httplib {
class Server;
}

namespace seatplan {

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  // Hard cap on every solve request, in seconds.
  double solve_time_cap = 30.0;
  std::string cors_origin = "*";
};

// Reads SEATPLAN_PORT on top of the defaults.
ServiceConfig service_config_from_env();

struct HttpReply {
  int status = 200;
  json body;
};

// Reads overrides (theta, it_max, eta_max, psi, gamma, seed,
// time_limit_seconds) on top of `base`. Throws FormatError on wrong types
// and std::invalid_argument on values outside their ranges.
SolveParams params_from_json(json const& doc, SolveParams base = {});
// {"<id>": [row, pos]} with 1-based ids.
Locks locks_from_json(json const& doc);
GenConfig gen_config_from_json(json const& doc);

class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();

  ServiceConfig const& config() const { return config_; }
  void set_ready(bool ready) { ready_ = ready; }
  bool ready() const { return ready_; }

  HttpReply solve(std::string const& body) const;
  HttpReply builtin() const;
  HttpReply generate(std::string const& body) const;
  HttpReply health() const;

  // Binds, marks the service ready and blocks until stop(). Returns false
  // when the port cannot be bound.
  bool run();
  void stop();

 private:
  ServiceConfig config_;
  std::atomic<bool> ready_{false};
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace seatplan
