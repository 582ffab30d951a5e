#pragma once

#include "uavsim/config.hpp"
#include "uavsim/environment.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace uavsim::protocol {

inline constexpr int kVersion = 1;

// One client session: at most one active episode, requests handled strictly
// in order. Not thread-safe; each connection owns its own session.
//
// Requests (one JSON object per line):
//   {"cmd":"spec"}
//   {"cmd":"reset","scenario":1,"seed":7}
//   {"cmd":"step","actions":{"evader":[a1,a2]}}      (+ "interceptor" in scenario 3)
//   {"cmd":"close"}
// Replies are {"ok":true,...} or {"ok":false,"error":code,"detail":text} with
// codes bad_request, no_episode, bad_action, config_error, internal.
class Session {
public:
    Session(std::shared_ptr<const EpisodeConfig> cfg, std::uint64_t id);

    // Handles one request line and returns the reply line (without newline).
    [[nodiscard]] std::string handle(std::string_view line);

    [[nodiscard]] bool closed() const { return closed_; }
    [[nodiscard]] std::uint64_t id() const { return id_; }
    [[nodiscard]] std::uint64_t episodes() const { return episodes_; }
    [[nodiscard]] const std::optional<EpisodeState>& episode() const { return episode_; }

private:
    std::shared_ptr<const EpisodeConfig> cfg_;
    std::uint64_t id_;
    std::optional<EpisodeState> episode_;
    std::uint64_t episodes_{0};
    bool closed_{false};
};

}  // namespace uavsim::protocol
