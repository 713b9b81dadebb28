#include "seatplan/service.hpp"

#include <cstdlib>

#include <httplib.h>

namespace seatplan {

ServiceConfig service_config_from_env() {
  ServiceConfig config;
  if (char const* port = std::getenv("SEATPLAN_PORT")) {
    auto const value = std::atoi(port);
    if (value > 0 && value < 65536) {
      config.port = value;
    }
  }
  if (char const* origin = std::getenv("SEATPLAN_CORS_ORIGIN")) {
    config.cors_origin = origin;
  }
  return config;
}

namespace {

double number_field(json const& doc, char const* key, double fallback) {
  auto const it = doc.find(key);
  if (it == doc.end() || it->is_null()) {
    return fallback;
  }
  if (!it->is_number()) {
    throw FormatError(std::string("field '") + key + "' must be a number");
  }
  return it->get<double>();
}

int int_field(json const& doc, char const* key, int fallback) {
  auto const it = doc.find(key);
  if (it == doc.end() || it->is_null()) {
    return fallback;
  }
  if (!it->is_number_integer()) {
    throw FormatError(std::string("field '") + key + "' must be an integer");
  }
  return it->get<int>();
}

json error_body(std::string const& message) { return {{"error", message}}; }

json parse_body(std::string const& body) {
  try {
    return json::parse(body);
  } catch (json::parse_error const& e) {
    throw FormatError(std::string("request is not valid JSON: ") + e.what());
  }
}

}  // namespace

SolveParams params_from_json(json const& doc, SolveParams base) {
  if (doc.is_null()) {
    return base;
  }
  if (!doc.is_object()) {
    throw FormatError("params must be an object");
  }
  base.theta = number_field(doc, "theta", base.theta);
  base.it_max = int_field(doc, "it_max", base.it_max);
  base.eta_max = int_field(doc, "eta_max", base.eta_max);
  base.psi = number_field(doc, "psi", base.psi);
  base.gamma = number_field(doc, "gamma", base.gamma);
  base.time_limit_seconds =
      number_field(doc, "time_limit_seconds", base.time_limit_seconds);
  if (auto const it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_unsigned()) {
      throw FormatError("field 'seed' must be a non-negative integer");
    }
    base.seed = it->get<std::uint64_t>();
  }
  base.validate();
  return base;
}

Locks locks_from_json(json const& doc) {
  Locks locks;
  if (doc.is_null()) {
    return locks;
  }
  if (!doc.is_object()) {
    throw InvalidLocks("locks must map student ids to [row, pos]");
  }
  for (auto const& [key, value] : doc.items()) {
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(key, &used);
      if (used != key.size()) {
        throw std::invalid_argument(key);
      }
    } catch (std::exception const&) {
      throw InvalidLocks("lock key '" + key + "' is not a student id");
    }
    if (!value.is_array() || value.size() != 2 ||
        !value[0].is_number_integer() || !value[1].is_number_integer()) {
      throw InvalidLocks("lock of student " + key + " must be [row, pos]");
    }
    locks.push_back({id - 1, {value[0].get<int>(), value[1].get<int>()}});
  }
  return locks;
}

GenConfig gen_config_from_json(json const& doc) {
  if (!doc.is_object()) {
    throw FormatError("generator config must be an object");
  }
  GenConfig config;
  config.n = int_field(doc, "n", config.n);
  config.conflict_student_pct =
      number_field(doc, "conflict_student_pct", config.conflict_student_pct);
  config.conflict_edge_pct =
      number_field(doc, "conflict_edge_pct", config.conflict_edge_pct);
  config.min_desks_per_row =
      int_field(doc, "min_desks_per_row", config.min_desks_per_row);
  config.front_min = number_field(doc, "front_min", config.front_min);
  config.front_max = number_field(doc, "front_max", config.front_max);
  config.back_min = number_field(doc, "back_min", config.back_min);
  config.back_max = number_field(doc, "back_max", config.back_max);
  config.d_min = int_field(doc, "d_min", config.d_min);
  if (auto const it = doc.find("rows_choices"); it != doc.end()) {
    if (!it->is_array()) {
      throw FormatError("field 'rows_choices' must be an array");
    }
    config.rows_choices.clear();
    for (auto const& r : *it) {
      if (!r.is_number_integer()) {
        throw FormatError("field 'rows_choices' must hold integers");
      }
      config.rows_choices.push_back(r.get<int>());
    }
  }
  if (auto const it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_unsigned()) {
      throw FormatError("field 'seed' must be a non-negative integer");
    }
    config.seed = it->get<std::uint64_t>();
  }
  config.replicates = 1;
  config.validate();
  return config;
}

Service::Service(ServiceConfig config)
    : config_(std::move(config)), server_(std::make_unique<httplib::Server>()) {
  auto reply = [](httplib::Response& res, HttpReply const& out) {
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server_->set_default_headers(
      {{"Access-Control-Allow-Origin", config_.cors_origin},
       {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
       {"Access-Control-Allow-Headers", "Content-Type"}});
  server_->Options(".*", [](httplib::Request const&, httplib::Response& res) {
    res.status = 204;
  });
  server_->Post("/api/solve",
                [this, reply](httplib::Request const& req,
                              httplib::Response& res) {
                  reply(res, solve(req.body));
                });
  server_->Get("/api/instances/builtin",
               [this, reply](httplib::Request const&, httplib::Response& res) {
                 reply(res, builtin());
               });
  server_->Post("/api/instances/generate",
                [this, reply](httplib::Request const& req,
                              httplib::Response& res) {
                  reply(res, generate(req.body));
                });
  server_->Get("/healthz",
               [this, reply](httplib::Request const&, httplib::Response& res) {
                 reply(res, health());
               });
}

Service::~Service() = default;

HttpReply Service::solve(std::string const& body) const {
  json request;
  Instance instance;
  SolveParams params;
  Locks locks;
  try {
    request = parse_body(body);
    if (!request.is_object() || !request.contains("instance")) {
      return {400, error_body("request needs an 'instance' object")};
    }
    instance = instance_from_json(request["instance"]);
    params = params_from_json(request.value("params", json()));
    locks = locks_from_json(request.value("locks", json()));
  } catch (FormatError const& e) {
    return {400, error_body(e.what())};
  } catch (std::invalid_argument const& e) {
    return {400, error_body(e.what())};
  }

  try {
    Problem const problem(instance);
    validate_locks(problem, locks);
    params.time_limit_seconds =
        params.time_limit_seconds > 0.0
            ? std::min(params.time_limit_seconds, config_.solve_time_cap)
            : config_.solve_time_cap;
    auto const result = seatplan::solve(problem, params, locks);
    return {200, solve_result_to_json(problem, result)};
  } catch (InvalidInstance const& e) {
    return {422, {{"error", e.what()},
                  {"report", e.report().summary()}}};
  } catch (InvalidLocks const& e) {
    return {400, error_body(e.what())};
  } catch (std::exception const& e) {
    return {500, error_body(e.what())};
  }
}

HttpReply Service::builtin() const {
  json list = json::array();
  for (auto const& entry : builtin_classrooms()) {
    list.push_back({{"key", entry.key},
                    {"name", entry.instance.name},
                    {"instance", instance_to_json(entry.instance)}});
  }
  return {200, std::move(list)};
}

HttpReply Service::generate(std::string const& body) const {
  GenConfig config;
  try {
    config = gen_config_from_json(parse_body(body));
  } catch (FormatError const& e) {
    return {400, error_body(e.what())};
  } catch (std::invalid_argument const& e) {
    return {400, error_body(e.what())};
  }
  try {
    auto generated = seatplan::generate(config);
    auto doc = instance_to_json(generated.front().instance);
    doc["seed"] = generated.front().seed;
    return {200, std::move(doc)};
  } catch (GenerationError const& e) {
    return {422, error_body(e.what())};
  } catch (std::exception const& e) {
    return {500, error_body(e.what())};
  }
}

HttpReply Service::health() const {
  json body{{"status", ready_ ? "ok" : "starting"},
            {"version", SEATPLAN_VERSION}};
  return {ready_ ? 200 : 503, std::move(body)};
}

bool Service::run() {
  if (!server_->bind_to_port(config_.host, config_.port)) {
    return false;
  }
  ready_ = true;
  auto const ok = server_->listen_after_bind();
  ready_ = false;
  return ok;
}

void Service::stop() { server_->stop(); }

}  // namespace seatplan
