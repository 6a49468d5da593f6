#include "inscribed/service.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "inscribed/document.hpp"
#include "inscribed/genericity.hpp"
#include "inscribed/svg.hpp"

namespace inscribed {

using Json = nlohmann::ordered_json;

namespace {

enum class Status { Pending, Done, Failed };

struct AnalysisEntry {
  Status status = Status::Pending;
  std::shared_ptr<const Analysis> analysis;
  std::string document;
  ErrorKind error = ErrorKind::PreconditionFailed;
  std::string message;
};

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError:
    case ErrorKind::NotSimple:
    case ErrorKind::TooFewVertices:
    case ErrorKind::InvalidPolygon:
    case ErrorKind::PreconditionFailed: return 400;
    case ErrorKind::NotFound: return 404;
    default: return 422;
  }
}

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorKind kind, const std::string& message) {
  send_json(res, status_for(kind), {{"error", std::string(to_string(kind))}, {"message", message}});
}

}  // namespace

struct Service::State {
  ServiceOptions options;
  httplib::Server server;

  mutable std::shared_mutex polygons_mutex;
  std::map<std::string, Polygon> polygons;
  int next_polygon = 1;

  mutable std::shared_mutex analyses_mutex;
  std::map<std::string, AnalysisEntry> analyses;
  int next_analysis = 1;

  std::mutex workers_mutex;
  std::vector<std::jthread> workers;

  std::string add_polygon(Polygon polygon) {
    std::unique_lock lock(polygons_mutex);
    std::string id = "p" + std::to_string(next_polygon++);
    polygons.emplace(id, std::move(polygon));
    return id;
  }

  Polygon find_polygon(const std::string& id) const {
    std::shared_lock lock(polygons_mutex);
    const auto it = polygons.find(id);
    if (it == polygons.end()) throw Error(ErrorKind::NotFound, "no polygon '" + id + "'");
    return it->second;
  }

  AnalysisEntry find_analysis(const std::string& id) const {
    std::shared_lock lock(analyses_mutex);
    const auto it = analyses.find(id);
    if (it == analyses.end()) throw Error(ErrorKind::NotFound, "no analysis '" + id + "'");
    return it->second;
  }

  void compute(const std::string& id, const Polygon& polygon) {
    AnalysisEntry entry;
    try {
      auto analysis = std::make_shared<Analysis>(analyze(polygon, options.trace));
      MetadataRecord meta;
      meta.input_reversed = polygon.was_reversed();
      entry.document = serialize(make_document(*analysis, check_generic(polygon), meta));
      entry.analysis = std::move(analysis);
      entry.status = Status::Done;
    } catch (const Error& e) {
      entry.status = Status::Failed;
      entry.error = e.kind();
      entry.message = e.detail();
    }
    std::unique_lock lock(analyses_mutex);
    analyses[id] = std::move(entry);
  }

  void routes() {
    const auto guarded = [](auto body) {
      return [body](const httplib::Request& req, httplib::Response& res) {
        try {
          body(req, res);
        } catch (const Error& e) {
          send_error(res, e.kind(), e.detail());
        } catch (const std::exception& e) {
          send_error(res, ErrorKind::PreconditionFailed, e.what());
        }
      };
    };

    server.Post("/polygons", guarded([this](const httplib::Request& req, httplib::Response& res) {
      PolygonDocument doc = parse_polygon(req.body);
      const std::string id = add_polygon(std::move(doc.polygon));
      send_json(res, 201, {{"id", id}, {"reversed", doc.reversed}});
    }));

    server.Get(R"(/polygons/([A-Za-z0-9]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Polygon polygon = find_polygon(req.matches[1]);
      Json body = Json::parse(serialize_polygon(polygon));
      body["id"] = req.matches[1].str();
      send_json(res, 200, body);
    }));

    server.Post(R"(/polygons/([A-Za-z0-9]+)/perturb)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Polygon polygon = find_polygon(req.matches[1]);
      double eps = 1e-3;
      std::uint64_t seed = 1;
      if (!req.body.empty()) {
        Json j;
        try {
          j = Json::parse(req.body);
          eps = j.value("eps", eps);
          seed = j.value("seed", seed);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::SchemaError, e.what());
        }
      }
      if (!(eps > 0)) throw Error(ErrorKind::PreconditionFailed, "eps must be positive");
      const std::string id = add_polygon(slide_perturb(polygon, eps, seed));
      send_json(res, 201, {{"id", id}});
    }));

    server.Post(R"(/polygons/([A-Za-z0-9]+)/analyze)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Polygon polygon = find_polygon(req.matches[1]);
      std::string id;
      {
        std::unique_lock lock(analyses_mutex);
        id = "a" + std::to_string(next_analysis++);
        analyses.emplace(id, AnalysisEntry{});
      }
      if (polygon.size() <= options.sync_vertex_limit) {
        compute(id, polygon);
        const AnalysisEntry entry = find_analysis(id);
        send_json(res, 201, {{"id", id}, {"status", entry.status == Status::Done ? "done" : "failed"}});
      } else {
        std::lock_guard lock(workers_mutex);
        workers.emplace_back([this, id, polygon] { compute(id, polygon); });
        send_json(res, 202, {{"id", id}, {"status", "pending"}});
      }
    }));

    server.Get(R"(/analyses/([A-Za-z0-9]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const AnalysisEntry entry = find_analysis(req.matches[1]);
      if (entry.status == Status::Pending) {
        send_json(res, 202, {{"id", req.matches[1].str()}, {"status", "pending"}});
      } else if (entry.status == Status::Failed) {
        send_error(res, entry.error, entry.message);
      } else {
        res.status = 200;
        res.set_content(entry.document, "application/json");
      }
    }));

    server.Get(R"(/analyses/([A-Za-z0-9]+)/components/(\d+)/sample)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const AnalysisEntry entry = ready(req.matches[1]);
                 const int c = std::stoi(req.matches[2]);
                 if (c < 0 || c >= static_cast<int>(entry.analysis->components.size()))
                   throw Error(ErrorKind::NotFound, "no component " + req.matches[2].str());
                 if (!req.has_param("u")) throw Error(ErrorKind::PreconditionFailed, "missing query parameter u");
                 double u = 0.0;
                 try {
                   std::size_t used = 0;
                   const std::string text = req.get_param_value("u");
                   u = std::stod(text, &used);
                   if (used != text.size()) throw std::invalid_argument("trailing characters");
                 } catch (const std::exception&) {
                   throw Error(ErrorKind::PreconditionFailed, "u must be a number");
                 }
                 if (!(u >= 0 && u <= 1)) throw Error(ErrorKind::PreconditionFailed, "u must lie in [0, 1]");
                 res.status = 200;
                 res.set_content(serialize(entry.analysis->sample(c, u), u), "application/json");
               }));

    server.Get(R"(/analyses/([A-Za-z0-9]+)/svg)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const AnalysisEntry entry = ready(req.matches[1]);
      res.status = 200;
      res.set_content(render_svg(*entry.analysis), "image/svg+xml");
    }));
  }

  AnalysisEntry ready(const std::string& id) const {
    AnalysisEntry entry = find_analysis(id);
    if (entry.status == Status::Pending) throw Error(ErrorKind::PreconditionFailed, "analysis '" + id + "' is pending");
    if (entry.status == Status::Failed) throw Error(entry.error, entry.message);
    return entry;
  }
};

Service::Service(ServiceOptions options) : state_(std::make_unique<State>()) {
  state_->options = std::move(options);
  state_->routes();
}

Service::~Service() {
  stop();
  std::lock_guard lock(state_->workers_mutex);
  state_->workers.clear();
}

int Service::bind(const std::string& host, int port) {
  if (port == 0) return state_->server.bind_to_any_port(host);
  return state_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::run() { return state_->server.listen_after_bind(); }

void Service::stop() {
  if (state_->server.is_running()) state_->server.stop();
}

void Service::wait_until_ready() const { state_->server.wait_until_ready(); }

}  // namespace inscribed
