#pragma once

#include "uavsim/config.hpp"

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace uavsim {

// TCP front end for protocol::Session: newline-delimited requests, one
// worker thread and one session per connection.
class EnvServer {
public:
    explicit EnvServer(EpisodeConfig cfg);
    ~EnvServer();

    EnvServer(const EnvServer&) = delete;
    EnvServer& operator=(const EnvServer&) = delete;

    // Binds and starts accepting. Port 0 picks an ephemeral port.
    void start(const std::string& bind_address, std::uint16_t port);
    // Closes the listener and every open connection, then joins all workers.
    void stop();
    // Blocks until a stop() call from another thread has finished.
    void wait();

    [[nodiscard]] std::uint16_t port() const { return port_; }
    [[nodiscard]] std::size_t activeSessions() const;
    [[nodiscard]] std::uint64_t sessionsServed() const { return next_session_id_.load(); }

    static constexpr std::size_t kMaxLineBytes = 1 << 20;

private:
    struct Connection {
        int fd{-1};
        std::thread worker;
        std::atomic<bool> finished{false};
    };

    void acceptLoop();
    void serve(Connection& conn, std::uint64_t session_id);
    void reapFinished();

    std::shared_ptr<const EpisodeConfig> cfg_;
    int listen_fd_{-1};
    std::uint16_t port_{0};
    std::thread acceptor_;
    std::atomic<bool> running_{false};
    std::atomic<bool> stopped_{true};
    std::atomic<std::uint64_t> next_session_id_{0};

    mutable std::mutex mutex_;
    std::list<std::unique_ptr<Connection>> connections_;
};

}  // namespace uavsim
