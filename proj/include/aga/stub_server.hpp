#pragma once

#include <memory>
#include <string>

#include "aga/backend.hpp"

namespace aga {

// Local HTTP fixture server speaking the model-service wire protocol.
// Each endpoint validates the incoming request with the shared codecs
// (malformed bodies get a 400) and replays a canned response loaded from
// <fixture_dir>/{detect,segment,caption,background}_response.json. The last
// request body per role is kept for assertions.
class StubServer {
 public:
  explicit StubServer(const std::string& fixture_dir);
  ~StubServer();

  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  void start();  // binds 127.0.0.1 on an ephemeral port
  void stop();

  int port() const;
  std::string base_url() const;

  std::string last_request(BackendRole role) const;
  size_t request_count(BackendRole role) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace aga
