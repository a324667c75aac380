#include "aga/stub_server.hpp"

#include <array>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "aga/error.hpp"
#include "aga/wire.hpp"

namespace aga {
namespace {

std::string read_file_or_empty(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

struct StubServer::Impl {
  httplib::Server server;
  std::thread thread;
  int port = 0;

  std::array<std::string, 4> canned;  // indexed by BackendRole
  mutable std::mutex mutex;
  std::array<std::string, 4> last;
  std::array<size_t, 4> count{};

  void record(BackendRole role, const std::string& body) {
    std::lock_guard<std::mutex> lock(mutex);
    last[static_cast<size_t>(role)] = body;
    ++count[static_cast<size_t>(role)];
  }

  // Validation happens with the same decoders the clients use, so a request
  // the stub accepts is by construction one the protocol allows.
  template <typename Decode>
  void route(const char* path, BackendRole role, Decode decode) {
    server.Post(path, [this, role, decode](const httplib::Request& req,
                                           httplib::Response& res) {
      record(role, req.body);
      try {
        decode(req.body);
      } catch (const Error& e) {
        res.status = 400;
        res.set_content(e.what(), "text/plain");
        return;
      }
      const std::string& reply = canned[static_cast<size_t>(role)];
      if (reply.empty()) {
        res.status = 500;
        res.set_content("stub: no canned response configured", "text/plain");
        return;
      }
      res.set_content(reply, "application/json");
    });
  }
};

StubServer::StubServer(const std::string& fixture_dir) : impl_(std::make_unique<Impl>()) {
  impl_->canned[static_cast<size_t>(BackendRole::Detector)] =
      read_file_or_empty(fixture_dir + "/detect_response.json");
  impl_->canned[static_cast<size_t>(BackendRole::Segmenter)] =
      read_file_or_empty(fixture_dir + "/segment_response.json");
  impl_->canned[static_cast<size_t>(BackendRole::Captioner)] =
      read_file_or_empty(fixture_dir + "/caption_response.json");
  impl_->canned[static_cast<size_t>(BackendRole::BackgroundGenerator)] =
      read_file_or_empty(fixture_dir + "/background_response.json");

  impl_->route("/detect", BackendRole::Detector,
               [](const std::string& body) { decode_detect_request(body); });
  impl_->route("/segment", BackendRole::Segmenter,
               [](const std::string& body) { decode_segment_request(body); });
  impl_->route("/caption", BackendRole::Captioner,
               [](const std::string& body) { decode_caption_request(body); });
  impl_->route("/background", BackendRole::BackgroundGenerator,
               [](const std::string& body) { decode_background_request(body); });
}

StubServer::~StubServer() { stop(); }

void StubServer::start() {
  impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  if (impl_->port <= 0) fail(ErrorCode::BackendUnreachable, "stub: could not bind");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void StubServer::stop() {
  if (impl_->thread.joinable()) {
    impl_->server.stop();
    impl_->thread.join();
  }
}

int StubServer::port() const { return impl_->port; }

std::string StubServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}

std::string StubServer::last_request(BackendRole role) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->last[static_cast<size_t>(role)];
}

size_t StubServer::request_count(BackendRole role) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->count[static_cast<size_t>(role)];
}

}  // namespace aga
