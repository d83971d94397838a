// Client side of the contextual embedding wire contract, driven against an
// in-process fake service.

#include <atomic>
#include <thread>

#include "affexp/embedding_store.hpp"
#include "affexp/error.hpp"
#include "affexp/log.hpp"
#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "support.hpp"

using namespace affexp;

namespace {

// Fake provider: vector = [len(tokens), target_index, hash-ish of the token]
// so the same token in two contexts gets different vectors.
class FakeService {
 public:
  explicit FakeService(std::size_t dim = 3, std::size_t reply_dim = 3) : dim_(dim), reply_dim_(reply_dim) {
    server_.Get("/v1/info", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(nlohmann::json{{"dim", dim_}, {"model", "fake-contextual"}}.dump(), "application/json");
    });
    server_.Post("/v1/embed", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests;
      const auto j = nlohmann::json::parse(req.body);
      const auto tokens = j.at("tokens").get<std::vector<std::string>>();
      const auto idx = j.at("target_index").get<std::size_t>();
      if (idx >= tokens.size()) {
        res.status = 422;
        res.set_content(R"({"detail":"target_index out of range"})", "application/json");
        return;
      }
      if (tokens[idx] == "overload") {
        res.status = 503;
        return;
      }
      std::vector<double> v(reply_dim_, 0.0);
      v[0] = static_cast<double>(tokens.size());
      if (reply_dim_ > 1) v[1] = static_cast<double>(idx);
      if (reply_dim_ > 2) v[2] = static_cast<double>(tokens[idx].size());
      res.set_content(nlohmann::json{{"vector", v}, {"dim", reply_dim_}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeService() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::atomic<int> requests{0};

 private:
  httplib::Server server_;
  std::size_t dim_;
  std::size_t reply_dim_;
  int port_ = 0;
  std::thread thread_;
};

// A port nothing listens on: bind, remember, close.
int dead_port() {
  httplib::Server s;
  const int port = s.bind_to_any_port("127.0.0.1");
  s.stop();
  return port;
}

struct QuietLogs {
  QuietLogs() : old(log::level()) { log::set_level(log::Level::off); }
  ~QuietLogs() { log::set_level(old); }
  log::Level old;
};

}  // namespace

TEST_CASE("handshake and embed round trip") {
  FakeService svc;
  RemoteEmbeddingProvider p(svc.url(), std::chrono::seconds(2));
  CHECK(p.connected());
  CHECK(p.dimension() == 3);
  CHECK(p.contextual());
  REQUIRE(p.info().has_value());
  CHECK(p.info()->model == "fake-contextual");
  const auto v = p.embed({{"the", "bank", "of", "the", "river"}, 1});
  REQUIRE(v.has_value());
  CHECK(v->size() == 3);
  CHECK((*v)[0] == 5.0);
  CHECK((*v)[2] == 4.0);
}

TEST_CASE("the same token in two sentences may get different vectors") {
  FakeService svc;
  RemoteEmbeddingProvider p(svc.url());
  const std::vector<std::string> s{"bank", "of", "the", "river", "bank"};
  const auto a = p.embed({s, 0});
  const auto b = p.embed({s, 4});
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->size() == b->size());
  CHECK(*a != *b);
}

TEST_CASE("out-of-range index is rejected before and by the service") {
  FakeService svc;
  RemoteEmbeddingProvider p(svc.url());
  CHECK_THROWS_AS(p.embed({{"a"}, 3}), ValidationError);
  CHECK(svc.requests == 0);  // validated client-side first
}

TEST_CASE("service-side 422 surfaces as a validation error") {
  // a service that refuses every request it cannot tokenize
  httplib::Server server;
  server.Get("/v1/info", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"dim": 2, "model": "strict"})", "application/json");
  });
  server.Post("/v1/embed", [](const httplib::Request&, httplib::Response& res) {
    res.status = 422;
    res.set_content(R"({"detail":"tokenization failed"})", "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  {
    RemoteEmbeddingProvider p("http://127.0.0.1:" + std::to_string(port));
    CHECK_THROWS_AS(p.embed({{"x"}, 0}), ValidationError);
  }
  server.stop();
  t.join();
}

TEST_CASE("dimension drift is a protocol error and never falls back") {
  FakeService svc(3, 2);
  auto fallback = std::make_shared<StaticEmbeddingProvider>(testsupport::make_space({{"x", {1, 2, 3}}}));
  RemoteEmbeddingProvider p(svc.url(), std::chrono::seconds(2), fallback);
  CHECK_THROWS_AS(p.embed({{"x"}, 0}), ProtocolError);
}

TEST_CASE("unreachable service falls back to the static provider when configured") {
  QuietLogs quiet;
  const std::string url = "http://127.0.0.1:" + std::to_string(dead_port());
  auto space = testsupport::make_space({{"good", {0.25, 0.5}}});
  auto p = make_provider(url, space, std::chrono::milliseconds(500));
  const auto* remote = dynamic_cast<const RemoteEmbeddingProvider*>(p.get());
  REQUIRE(remote != nullptr);
  CHECK_FALSE(remote->connected());
  CHECK(p->dimension() == 2);
  const auto v = p->embed({{"so", "good"}, 1});
  REQUIRE(v);
  CHECK(*v == std::vector<double>{0.25, 0.5});
}

TEST_CASE("unreachable service without fallback is an error") {
  QuietLogs quiet;
  const std::string url = "http://127.0.0.1:" + std::to_string(dead_port());
  CHECK_THROWS_AS(RemoteEmbeddingProvider(url, std::chrono::milliseconds(500)), ProviderUnavailableError);
}

TEST_CASE("overload mid-run uses the fallback only when dimensions agree") {
  QuietLogs quiet;
  FakeService svc(2, 2);
  auto same = std::make_shared<StaticEmbeddingProvider>(testsupport::make_space({{"overload", {7, 8}}}));
  RemoteEmbeddingProvider with(svc.url(), std::chrono::seconds(2), same);
  CHECK(*with.embed({{"overload"}, 0}) == std::vector<double>{7, 8});

  auto other = std::make_shared<StaticEmbeddingProvider>(testsupport::make_space({{"overload", {7, 8, 9}}}));
  RemoteEmbeddingProvider without(svc.url(), std::chrono::seconds(2), other);
  CHECK_THROWS_AS(without.embed({{"overload"}, 0}), ProviderUnavailableError);
}

TEST_CASE("concurrent requests from several threads") {
  FakeService svc;
  RemoteEmbeddingProvider p(svc.url());
  std::atomic<int> ok{0};
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (int i = 0; i < 10; ++i) {
        const auto v = p.embed({{"a", "b", "c"}, static_cast<std::size_t>((w + i) % 3)});
        if (v && v->size() == 3) ++ok;
      }
    });
  }
  for (auto& t : workers) t.join();
  CHECK(ok == 40);
}
