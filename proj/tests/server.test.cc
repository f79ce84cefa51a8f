// Copyright 2026 The qbot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <arpa/inet.h>
#include <gtest/gtest.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "json.hpp"
#include "qbot/qbot.h"

using nlohmann::json;

namespace {

std::string data(const std::string &relative) {
    std::ifstream in(std::string(QBOT_TEST_DATA_DIR) + "/" + relative, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Minimal line-oriented client for the NDJSON protocol.
class Client {
   public:
    explicit Client(int port) {
        fd_ = socket(AF_INET, SOCK_STREAM, 0);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(static_cast<uint16_t>(port));
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        connected_ = connect(fd_, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) == 0;
    }
    ~Client() {
        close(fd_);
    }
    bool connected() const {
        return connected_;
    }

    void send(const json &msg) {
        send_raw(msg.dump() + "\n");
    }
    void send_raw(const std::string &text) {
        ASSERT_EQ(::send(fd_, text.data(), text.size(), MSG_NOSIGNAL), static_cast<ssize_t>(text.size()));
    }

    json read() {
        while (true) {
            auto nl = buffer_.find('\n');
            if (nl != std::string::npos) {
                auto line = buffer_.substr(0, nl);
                buffer_.erase(0, nl + 1);
                return json::parse(line);
            }
            char chunk[4096];
            auto n = recv(fd_, chunk, sizeof(chunk), 0);
            if (n <= 0) {
                return json();
            }
            buffer_.append(chunk, static_cast<size_t>(n));
        }
    }

   private:
    int fd_ = -1;
    bool connected_ = false;
    std::string buffer_;
};

struct ServerFixture : ::testing::Test {
    void SetUp() override {
        ASSERT_EQ(qbot_server_start(0, &server), QBOT_OK) << qbot_last_error();
        port = qbot_server_port(server);
        ASSERT_GT(port, 0);
    }
    void TearDown() override {
        qbot_server_free(server);
    }
    qbot_server *server = nullptr;
    int port = 0;
};

}  // namespace

TEST_F(ServerFixture, interactive_t_junction_over_socket) {
    Client c(port);
    ASSERT_TRUE(c.connected());
    c.send({{"type", "start"}, {"map", data("maps/t_junction.txt")}});
    auto state = c.read();
    ASSERT_EQ(state["type"], "state");
    ASSERT_EQ(state["status"], "running");

    c.send({{"type", "step"}});
    ASSERT_EQ(c.read()["action"], "Forward");
    c.send({{"type", "step"}});
    auto ask = c.read();
    ASSERT_EQ(ask["type"], "ask");
    ASSERT_EQ(ask["clear"], json::parse(R"(["F","B"])"));

    c.send({{"type", "answer"}, {"direction", "R"}});
    auto err = c.read();
    ASSERT_EQ(err["type"], "error");
    ASSERT_EQ(err["code"], "invalid_choice");

    c.send({{"type", "answer"}, {"direction", "F"}});
    ASSERT_EQ(c.read()["ask_choice"], "F");
    c.send({{"type", "step"}});
    ASSERT_EQ(c.read()["clear"], json::parse(R"(["B","L","R"])"));
    c.send({{"type", "answer"}, {"direction", "L"}});
    auto last = c.read();
    ASSERT_EQ(last["terminal"], "GOAL");
    ASSERT_EQ(c.read(), json::parse(R"({"type":"terminal","status":"GOAL"})"));

    c.send({{"type", "state"}});
    auto final_state = c.read();
    ASSERT_EQ(final_state["status"], "terminated");
    ASSERT_EQ(final_state["terminal"], "GOAL");
    ASSERT_EQ(final_state["step"], 3);
}

TEST_F(ServerFixture, connections_are_independent) {
    Client a(port), b(port);
    ASSERT_TRUE(a.connected());
    ASSERT_TRUE(b.connected());
    a.send({{"type", "start"}, {"map", "###\n#^#\n###\n"}});
    a.read();
    b.send({{"type", "state"}});
    ASSERT_EQ(b.read()["status"], "idle");
    // Two messages in one write, and CRLF framing.
    a.send_raw("{\"type\":\"step\"}\r\n{\"type\":\"state\"}\n");
    ASSERT_EQ(a.read()["action"], "LiftOff");
    ASSERT_EQ(a.read()["type"], "terminal");
    ASSERT_EQ(a.read()["status"], "terminated");
    a.send_raw("garbage\n");
    ASSERT_EQ(a.read()["code"], "bad_request");
}

TEST_F(ServerFixture, stop_unblocks_wait_and_clients) {
    Client c(port);
    ASSERT_TRUE(c.connected());
    std::thread waiter([this] {
        EXPECT_EQ(qbot_server_wait(server), QBOT_OK);
    });
    ASSERT_EQ(qbot_server_stop(server), QBOT_OK);
    waiter.join();
    ASSERT_TRUE(c.read().is_null());
    ASSERT_EQ(qbot_server_stop(server), QBOT_OK);
}
