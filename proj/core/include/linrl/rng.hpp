#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace linrl {

/// Counter-based pseudo-random stream. A stream is identified by (seed, name);
/// every draw advances an explicit counter, so any value a run consumed can be
/// cited as (stream name, counter). Substreams derived with distinct names are
/// statistically independent and never share state with their parent, which is
/// what lets environments and agents draw from separate streams inside one run.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view name);

  /// Child stream keyed by (this stream, name). Counter starts at zero.
  RngStream substream(std::string_view name) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double next_double();
  /// Uniform on {0, 1, ..., n-1}; n >= 1.
  int next_int(int n);
  /// Standard normal (polar method; consumes a variable number of uniforms).
  double next_normal();

  std::uint64_t counter() const { return counter_; }
  const std::string& name() const { return name_; }

 private:
  RngStream(std::uint64_t key, std::string name, int);

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  std::string name_;
};

}  // namespace linrl
