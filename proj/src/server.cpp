#include "uavsim/server.hpp"

#include "uavsim/error.hpp"
#include "uavsim/protocol.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace uavsim {

namespace {

bool sendAll(int fd, const std::string& data)
{
    std::size_t sent = 0;
    while (sent < data.size()) {
        const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

}  // namespace

EnvServer::EnvServer(EpisodeConfig cfg)
{
    cfg.validate();
    cfg_ = std::make_shared<const EpisodeConfig>(std::move(cfg));
}

EnvServer::~EnvServer()
{
    stop();
}

void EnvServer::start(const std::string& bind_address, std::uint16_t port)
{
    if (running_) throw ContractViolation("server already running");

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, bind_address.c_str(), &addr.sin_addr) != 1) {
        throw InvalidArgument("bind address must be a dotted IPv4 address, got '" + bind_address + "'");
    }

    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw IoError(std::string("socket: ") + std::strerror(errno));
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
        const std::string reason = std::strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw IoError("cannot listen on " + bind_address + ":" + std::to_string(port) + ": " + reason);
    }

    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);

    stopped_ = false;
    running_ = true;
    acceptor_ = std::thread([this] { acceptLoop(); });
}

void EnvServer::acceptLoop()
{
    while (running_) {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) continue;
            break;  // listener shut down
        }
        std::lock_guard lock(mutex_);
        if (!running_) {
            ::close(fd);
            break;
        }
        reapFinished();
        auto conn = std::make_unique<Connection>();
        conn->fd = fd;
        Connection& ref = *conn;
        const std::uint64_t id = next_session_id_.fetch_add(1) + 1;
        conn->worker = std::thread([this, &ref, id] { serve(ref, id); });
        connections_.push_back(std::move(conn));
    }
}

void EnvServer::serve(Connection& conn, std::uint64_t session_id)
{
    protocol::Session session(cfg_, session_id);
    std::string buffer;
    char chunk[4096];

    while (!session.closed()) {
        const ssize_t n = ::recv(conn.fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;  // peer gone or socket shut down
        buffer.append(chunk, static_cast<std::size_t>(n));

        std::size_t start = 0;
        for (auto nl = buffer.find('\n', start); nl != std::string::npos; nl = buffer.find('\n', start)) {
            std::string_view line(buffer.data() + start, nl - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            start = nl + 1;
            if (line.empty()) continue;
            if (!sendAll(conn.fd, session.handle(line) + "\n") || session.closed()) break;
        }
        buffer.erase(0, start);
        if (buffer.size() > kMaxLineBytes) {
            sendAll(conn.fd, R"({"ok":false,"error":"bad_request","detail":"request line too long"})"
                             "\n");
            break;
        }
    }
    ::shutdown(conn.fd, SHUT_RDWR);
    conn.finished = true;
}

void EnvServer::reapFinished()
{
    for (auto it = connections_.begin(); it != connections_.end();) {
        if ((*it)->finished) {
            (*it)->worker.join();
            ::close((*it)->fd);
            it = connections_.erase(it);
        } else {
            ++it;
        }
    }
}

void EnvServer::stop()
{
    if (!running_.exchange(false)) {
        stopped_.wait(false);
        return;
    }
    ::shutdown(listen_fd_, SHUT_RDWR);
    if (acceptor_.joinable()) acceptor_.join();
    ::close(listen_fd_);
    listen_fd_ = -1;

    std::lock_guard lock(mutex_);
    for (auto& conn : connections_) ::shutdown(conn->fd, SHUT_RDWR);
    for (auto& conn : connections_) {
        conn->worker.join();
        ::close(conn->fd);
    }
    connections_.clear();
    stopped_ = true;
    stopped_.notify_all();
}

void EnvServer::wait()
{
    stopped_.wait(false);
}

std::size_t EnvServer::activeSessions() const
{
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (const auto& conn : connections_) n += conn->finished ? 0 : 1;
    return n;
}

}  // namespace uavsim
