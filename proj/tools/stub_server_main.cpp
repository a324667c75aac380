#include <csignal>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "aga/stub_server.hpp"

// Stands in for all four model services at once, replaying canned responses
// from a fixture directory. Intended for protocol debugging and CI.
int main(int argc, char** argv) {
  CLI::App app{"Fixture-replay server for the model-service wire protocol"};
  std::string fixture_dir;
  app.add_option("fixtures", fixture_dir,
                 "Directory with {detect,segment,caption,background}_response.json")
      ->required();
  CLI11_PARSE(app, argc, argv);

  try {
    aga::StubServer server(fixture_dir);
    server.start();
    std::printf("listening on %s\n", server.base_url().c_str());
    std::fflush(stdout);

    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
