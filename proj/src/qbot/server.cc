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

#include "qbot/server.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "qbot/error.h"
#include "qbot/protocol.h"

namespace qbot {

namespace {

bool send_all(int fd, const std::string &data) {
    size_t sent = 0;
    while (sent < data.size()) {
        ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            return false;
        }
        sent += static_cast<size_t>(n);
    }
    return true;
}

}  // namespace

Server::Server(int port) {
    if (port < 0 || port > 65535) {
        throw Error(ErrorCode::InvalidArgument, "port " + std::to_string(port) + " out of range");
    }
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) {
        throw Error(ErrorCode::Io, std::string("socket: ") + std::strerror(errno));
    }
    int yes = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(static_cast<uint16_t>(port));
    if (::bind(listen_fd_, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) < 0 || ::listen(listen_fd_, 16) < 0) {
        std::string why = std::strerror(errno);
        ::close(listen_fd_);
        throw Error(ErrorCode::Io, "cannot listen on port " + std::to_string(port) + ": " + why);
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr *>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    acceptor_ = std::thread([this] {
        accept_loop();
    });
}

Server::~Server() {
    stop();
}

void Server::accept_loop() {
    while (!stopping_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) {
                continue;
            }
            break;
        }
        std::lock_guard<std::mutex> lock(mu_);
        if (stopping_) {
            ::close(fd);
            break;
        }
        client_fds_.insert(fd);
        workers_.emplace_back([this, fd] {
            serve_connection(fd);
        });
    }
}

void Server::serve_connection(int fd) {
    ProtocolSession session;
    std::string buffer;
    char chunk[4096];
    bool open = true;
    while (open) {
        ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            break;
        }
        buffer.append(chunk, static_cast<size_t>(n));
        size_t eol;
        while (open && (eol = buffer.find('\n')) != std::string::npos) {
            std::string line = buffer.substr(0, eol);
            buffer.erase(0, eol + 1);
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            std::string reply;
            for (const auto &msg : session.handle(line)) {
                reply += msg;
                reply += '\n';
            }
            open = send_all(fd, reply);
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (client_fds_.erase(fd)) {
        ::close(fd);
    }
}

void Server::wait() {
    std::unique_lock<std::mutex> lock(mu_);
    stopped_cv_.wait(lock, [this] {
        return stopped_;
    });
}

void Server::stop() {
    std::lock_guard<std::mutex> stop_lock(stop_mu_);
    if (stopped_) {
        return;
    }
    stopping_ = true;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    if (acceptor_.joinable()) {
        acceptor_.join();
    }
    std::vector<std::thread> workers;
    {
        std::lock_guard<std::mutex> lock(mu_);
        for (int fd : client_fds_) {
            ::shutdown(fd, SHUT_RDWR);
        }
        workers.swap(workers_);
    }
    for (auto &t : workers) {
        t.join();
    }
    {
        std::lock_guard<std::mutex> lock(mu_);
        stopped_ = true;
    }
    stopped_cv_.notify_all();
}

}  // namespace qbot
