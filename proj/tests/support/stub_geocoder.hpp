#pragma once

// Local canned-response geocoder for exercising remote_resolve and the CLI
// geocode command without any outside network.

#include <httplib.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <string>
#include <thread>

namespace stub {

class Geocoder {
 public:
  Geocoder() {
    server_.Get("/ok", [this](const httplib::Request& req, httplib::Response& res) {
      last_query_ = req.get_param_value("q");
      res.set_content(R"({"key":"assiut","display_name":"Assiut","lat":27.18,"lon":31.18})", "application/json");
    });
    server_.Get("/missing", [](const httplib::Request&, httplib::Response& res) {
      res.status = 404;
      res.set_content("{}", "application/json");
    });
    server_.Get("/broken", [](const httplib::Request&, httplib::Response& res) {
      res.status = 500;
      res.set_content("oops", "text/plain");
    });
    server_.Get("/nolat", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"key":"assiut","display_name":"Assiut","lon":31.18})", "application/json");
    });
    server_.Get("/extra", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"key":"assiut","display_name":"Assiut","lat":27.18,"lon":31.18,"rank":1})",
                      "application/json");
    });
    server_.Get("/notjson", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("<html/>", "text/html");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~Geocoder() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  Geocoder(const Geocoder&) = delete;
  Geocoder& operator=(const Geocoder&) = delete;

  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }
  const std::string& last_query() const { return last_query_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::string last_query_;
};

/// A port on loopback with nothing listening: bound, never listened on,
/// then released.
inline int closed_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  socklen_t len = sizeof addr;
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

}  // namespace stub
