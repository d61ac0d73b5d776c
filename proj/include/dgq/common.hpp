#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dgq {

using VertexId = std::uint32_t;
using LabelId = std::uint32_t;
using EdgeId = std::uint64_t;
using Timestamp = std::int64_t;
using QVertexId = std::uint32_t;
using QEdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr LabelId kNoLabel = std::numeric_limits<LabelId>::max();

enum class Direction : std::uint8_t { Out, In, Any };

// ---------------------------------------------------------------------------
// Errors. Everything thrown by the library derives from dgq::Error so the CLI
// can map it to the "data error" exit code.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edge arrived with a timestamp older than the newest edge in the graph.
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// A vertex re-appeared with a different vertex label.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A structurally well-formed input violates a semantic rule (plan properties,
/// query shape).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedPrimitive : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Window
// ---------------------------------------------------------------------------

/// Sliding time window length in seconds. An edge with timestamp ts is expired
/// once ts <= t_last - length; a match is admissible while its span < length.
class Window {
 public:
  static constexpr Window infinite() { return Window(); }
  explicit constexpr Window(std::int64_t seconds) : seconds_(seconds) {
    if (seconds <= 0) throw ContractError("window length must be positive");
  }

  constexpr bool is_infinite() const { return !seconds_.has_value(); }
  constexpr std::int64_t seconds() const {
    return seconds_.value_or(std::numeric_limits<std::int64_t>::max());
  }

  constexpr bool expired(Timestamp ts, Timestamp t_last) const {
    return seconds_ && ts <= t_last - *seconds_;
  }
  constexpr bool admits_span(std::int64_t span) const { return !seconds_ || span < *seconds_; }

  friend constexpr bool operator==(const Window&, const Window&) = default;

 private:
  constexpr Window() = default;
  std::optional<std::int64_t> seconds_;
};

// ---------------------------------------------------------------------------
// Interner
// ---------------------------------------------------------------------------

/// Bidirectional string <-> dense id table.
class Interner {
 public:
  std::uint32_t intern(std::string_view name) {
    if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::optional<std::uint32_t> find(std::string_view name) const {
    if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    return std::nullopt;
  }

  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

}  // namespace dgq
