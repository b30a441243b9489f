#pragma once

// Reliable ordered byte streams for the key-exchange protocol: an in-process
// pipe pair, POSIX file-descriptor sockets (socketpair or TCP), a replay
// channel for scripted peers, and a recording wrapper.

#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <condition_variable>
#include <cstdint>
#include <cstring>
#include <deque>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>

#include "tcsp/bytes.hpp"
#include "tcsp/error.hpp"

namespace tcsp {

class ByteChannel {
 public:
  virtual ~ByteChannel() = default;

  virtual void send(std::span<const std::uint8_t> data) = 0;
  // Fills `out` completely; throws ProtocolError if the stream ends first.
  virtual void receive(std::span<std::uint8_t> out) = 0;
  // Ends our sending direction; the peer's pending receive sees end of stream.
  virtual void close() = 0;
};

namespace detail {

struct PipeBuffer {
  std::mutex mutex;
  std::condition_variable ready;
  std::deque<std::uint8_t> data;
  bool closed = false;

  void write(std::span<const std::uint8_t> bytes) {
    {
      std::lock_guard lock(mutex);
      if (closed) throw ProtocolError("write to closed pipe");
      data.insert(data.end(), bytes.begin(), bytes.end());
    }
    ready.notify_all();
  }

  void read(std::span<std::uint8_t> out) {
    std::unique_lock lock(mutex);
    std::size_t got = 0;
    while (got < out.size()) {
      ready.wait(lock, [&] { return !data.empty() || closed; });
      if (data.empty()) throw ProtocolError("unexpected end of stream");
      const std::size_t take = std::min(out.size() - got, data.size());
      std::copy_n(data.begin(), take, out.begin() + static_cast<std::ptrdiff_t>(got));
      data.erase(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(take));
      got += take;
    }
  }

  void shut() {
    {
      std::lock_guard lock(mutex);
      closed = true;
    }
    ready.notify_all();
  }
};

}  // namespace detail

class PipeChannel final : public ByteChannel {
 public:
  PipeChannel(std::shared_ptr<detail::PipeBuffer> out, std::shared_ptr<detail::PipeBuffer> in)
      : out_(std::move(out)), in_(std::move(in)) {}
  ~PipeChannel() override { out_->shut(); }

  void send(std::span<const std::uint8_t> data) override { out_->write(data); }
  void receive(std::span<std::uint8_t> out) override { in_->read(out); }
  void close() override { out_->shut(); }

 private:
  std::shared_ptr<detail::PipeBuffer> out_;
  std::shared_ptr<detail::PipeBuffer> in_;
};

// Two connected in-process endpoints.
inline std::pair<std::unique_ptr<ByteChannel>, std::unique_ptr<ByteChannel>> make_pipe_pair() {
  auto a_to_b = std::make_shared<detail::PipeBuffer>();
  auto b_to_a = std::make_shared<detail::PipeBuffer>();
  return {std::make_unique<PipeChannel>(a_to_b, b_to_a), std::make_unique<PipeChannel>(b_to_a, a_to_b)};
}

// Owns a connected stream socket.
class FdChannel final : public ByteChannel {
 public:
  explicit FdChannel(int fd) : fd_(fd) {}
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;
  ~FdChannel() override {
    if (fd_ >= 0) ::close(fd_);
  }

  void send(std::span<const std::uint8_t> data) override {
    std::size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError(std::string("socket send failed: ") + std::strerror(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  void receive(std::span<std::uint8_t> out) override {
    std::size_t got = 0;
    while (got < out.size()) {
      const ssize_t n = ::recv(fd_, out.data() + got, out.size() - got, 0);
      if (n == 0) throw ProtocolError("unexpected end of stream");
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError(std::string("socket receive failed: ") + std::strerror(errno));
      }
      got += static_cast<std::size_t>(n);
    }
  }

  void close() override { ::shutdown(fd_, SHUT_WR); }

 private:
  int fd_;
};

inline std::pair<std::unique_ptr<ByteChannel>, std::unique_ptr<ByteChannel>> make_socket_pair() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
    throw Error(std::string("socketpair failed: ") + std::strerror(errno));
  }
  return {std::make_unique<FdChannel>(fds[0]), std::make_unique<FdChannel>(fds[1])};
}

// Loopback TCP listener; port 0 picks an ephemeral port.
class TcpListener {
 public:
  explicit TcpListener(std::uint16_t port) : fd_(::socket(AF_INET, SOCK_STREAM, 0)) {
    if (fd_ < 0) throw Error(std::string("socket failed: ") + std::strerror(errno));
    const int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(fd_, 1) != 0) {
      const std::string why = std::strerror(errno);
      ::close(fd_);
      throw Error("cannot listen on port " + std::to_string(port) + ": " + why);
    }
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
  }
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener() { ::close(fd_); }

  std::uint16_t port() const noexcept { return port_; }

  std::unique_ptr<ByteChannel> accept() {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0) throw Error(std::string("accept failed: ") + std::strerror(errno));
    return std::make_unique<FdChannel>(fd);
  }

 private:
  int fd_;
  std::uint16_t port_ = 0;
};

inline std::unique_ptr<ByteChannel> tcp_connect(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  if (const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &found); rc != 0) {
    throw Error("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(found, &::freeaddrinfo);
  for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) return std::make_unique<FdChannel>(fd);
    ::close(fd);
  }
  throw Error("cannot connect to " + host + ":" + std::to_string(port));
}

// Serves a fixed incoming byte string (then end of stream) and records
// everything sent. Used to replay one side of a recorded transcript.
class ReplayChannel final : public ByteChannel {
 public:
  explicit ReplayChannel(Bytes incoming) : incoming_(std::move(incoming)) {}

  void send(std::span<const std::uint8_t> data) override { sent_.insert(sent_.end(), data.begin(), data.end()); }

  void receive(std::span<std::uint8_t> out) override {
    if (out.size() > incoming_.size() - pos_) {
      pos_ = incoming_.size();
      throw ProtocolError("unexpected end of stream");
    }
    std::copy_n(incoming_.begin() + static_cast<std::ptrdiff_t>(pos_), out.size(), out.begin());
    pos_ += out.size();
  }

  void close() override { closed_ = true; }

  const Bytes& sent() const noexcept { return sent_; }
  bool closed() const noexcept { return closed_; }

 private:
  Bytes incoming_;
  std::size_t pos_ = 0;
  Bytes sent_;
  bool closed_ = false;
};

// Pass-through that keeps a copy of both directions.
class RecordingChannel final : public ByteChannel {
 public:
  explicit RecordingChannel(ByteChannel& inner) : inner_(inner) {}

  void send(std::span<const std::uint8_t> data) override {
    inner_.send(data);
    sent_.insert(sent_.end(), data.begin(), data.end());
  }

  void receive(std::span<std::uint8_t> out) override {
    inner_.receive(out);
    received_.insert(received_.end(), out.begin(), out.end());
  }

  void close() override { inner_.close(); }

  const Bytes& sent() const noexcept { return sent_; }
  const Bytes& received() const noexcept { return received_; }

 private:
  ByteChannel& inner_;
  Bytes sent_;
  Bytes received_;
};

}  // namespace tcsp
