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

#ifndef QBOT_SERVER_H
#define QBOT_SERVER_H

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

namespace qbot {

/// Loopback TCP listener speaking the ProtocolSession line protocol. Each
/// connection owns one independent session and is served on its own thread.
class Server {
   public:
    /// Binds 127.0.0.1:port (0 picks a free port) and starts accepting.
    explicit Server(int port);
    ~Server();
    Server(const Server &) = delete;
    Server &operator=(const Server &) = delete;

    int port() const {
        return port_;
    }
    /// Blocks until stop() is called from another thread.
    void wait();
    /// Closes the listener and every open connection, then joins all threads.
    void stop();

   private:
    void accept_loop();
    void serve_connection(int fd);

    int listen_fd_ = -1;
    int port_ = 0;
    std::atomic<bool> stopping_{false};
    std::thread acceptor_;
    std::mutex stop_mu_;
    std::mutex mu_;
    std::condition_variable stopped_cv_;
    bool stopped_ = false;
    std::set<int> client_fds_;
    std::vector<std::thread> workers_;
};

}  // namespace qbot

#endif
