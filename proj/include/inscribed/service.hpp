#pragma once

#include <memory>
#include <string>

#include "inscribed/config_space.hpp"

namespace inscribed {

struct ServiceOptions {
  int sync_vertex_limit = 20;  // larger polygons are analyzed in the background
  TraceOptions trace;
};

/// JSON over HTTP.  Polygons and analyses live in memory for the lifetime
/// of the object; analyses never change once stored.
///
///   POST /polygons                               -> {"id"}
///   GET  /polygons/{id}                          -> polygon document
///   POST /polygons/{id}/perturb  {"eps","seed"}  -> {"id"} of a new polygon
///   POST /polygons/{id}/analyze                  -> {"id","status"}, 201 or 202
///   GET  /analyses/{id}                          -> analysis document, 202 while pending
///   GET  /analyses/{id}/components/{c}/sample?u= -> {"u","rho","vertices"}
///   GET  /analyses/{id}/svg
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Port 0 picks a free port.  Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace inscribed
